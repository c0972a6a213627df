#include "mobius/serialize.hpp"

namespace mobius {

namespace {

Json word_json(const Word& w) {
  Json out = Json::array();
  for (int i : w) out.push_back(i + 1);
  return out;
}

}  // namespace

Json point_json(BoundaryPoint p) {
  if (p.is_infinity(1e-12)) return "inf";
  return p.to_real();
}

Json to_json(const Arc& a) {
  if (a.is_full()) return Json{{"full", true}};
  if (a.point_like) return Json{point_json(a.start_point()), point_json(a.start_point())};
  return Json{point_json(a.end_point()), point_json(a.start_point())};
}

Json to_json(const ArcUnion& u) {
  Json out = Json::array();
  for (const Arc& a : u.arcs) out.push_back(to_json(a));
  return out;
}

Json to_json(const MoebiusMap& m) { return Json{{m.a(), m.b()}, {m.c(), m.d()}}; }

Json to_json(const WordWitness& w) {
  Json out{{"kind", to_string(w.kind)}, {"letters", word_json(w.word)}, {"matrix", to_json(w.product)}};
  out["distance"] = w.distance;
  if (w.kind == WitnessKind::InverseWitness) out["split"] = w.split;
  return out;
}

Json to_json(const MulticoneCertificate& c) {
  Json images = Json::array();
  for (const auto& u : c.per_generator_images) images.push_back(to_json(u));
  return Json{{"multicone", to_json(c.multicone)},
              {"components", c.multicone.arcs.size()},
              {"margin", c.margin},
              {"per_generator_images", images},
              {"word_depth_used", c.word_depth_used},
              {"seed_radius", c.radius},
              {"iterations", c.iterations}};
}

Json to_json(const MulticoneFailure& f) {
  Json out{{"reason", to_string(f.kind)}, {"detail", f.detail}};
  if (f.generator >= 0) out["generator"] = f.generator + 1;
  if (f.point) {
    out["point"] = point_json(*f.point);
    out["attracting_word"] = word_json(f.attracting_word);
    out["repelling_word"] = word_json(f.repelling_word);
    out["separation"] = f.separation;
  }
  return out;
}

Json to_json(const MulticoneVerification& v) {
  return Json{{"ok", v.ok},
              {"detail", v.detail},
              {"words_checked", v.words_checked},
              {"growth_slope", v.growth_slope},
              {"growth_offset", v.growth_offset}};
}

Json to_json(const LimitSetApprox& ls) {
  return Json{{"side", ls.forward ? "fwd" : "bwd"},
              {"method", to_string(ls.method)},
              {"depth", ls.depth},
              {"gap", ls.gap},
              {"point_count", ls.points.size()},
              {"hull", to_json(ls.hull)}};
}

Json to_json(const CoreSet& c) {
  auto gaps = [](const std::vector<CoreGap>& g) {
    Json out = Json::array();
    for (const auto& x : g) {
      out.push_back(Json{{"gap", to_json(x.gap)},
                         {"witness_point", point_json(x.witness.point)},
                         {"witness_word", word_json(x.witness.word)}});
    }
    return out;
  };
  return Json{{"forward", to_json(c.forward)},
              {"backward", to_json(c.backward)},
              {"forward_removed", gaps(c.forward_removed)},
              {"backward_removed", gaps(c.backward_removed)},
              {"whole_circle", c.degenerate}};
}

Json to_json(const ElementaryStatus& e) {
  Json out{{"kind", to_string(e.kind)}};
  if (e.point) out["point"] = point_json(*e.point);
  if (e.second) out["second"] = point_json(*e.second);
  if (e.interior) out["interior"] = Json{e.interior->real(), e.interior->imag()};
  return out;
}

Json to_json(const AffineCertificate& c) {
  Json out{{"status", to_string(c.status)}, {"reason", c.reason}};
  if (c.affine) {
    Json primes = Json::array();
    for (const auto& p : c.affine->prime_support) primes.push_back(p.get_str());
    out["prime_support"] = primes;
    out["exponents"] = c.affine->exponents;
    Json maps = Json::array();
    for (const auto& m : c.affine->maps) {
      maps.push_back(Json{{"lambda", to_string(m.lambda())}, {"kappa", to_string(m.kappa())}});
    }
    out["maps"] = maps;
  }
  if (c.witness) out["witness"] = to_json(*c.witness);
  return out;
}

Json to_json(const NotSemidiscreteConclusion& c) {
  Json sub = Json::array();
  for (int i : c.subtuple) sub.push_back(i + 1);
  return Json{{"point", point_json(c.backward_point.point)},
              {"backward_word", word_json(c.backward_point.word)},
              {"forward_word", word_json(c.forward_witness)},
              {"forward_arc", to_json(c.forward_arc)},
              {"subtuple", sub},
              {"non_elementary", c.non_elementary},
              {"assumptions", c.assumptions}};
}

Json to_json(const SpectralEstimate& s) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < s.per_length.size(); ++k) {
    rows.push_back(Json{{"L", s.per_length[k].first},
                        {"min_norm_root", s.per_length[k].second},
                        {"argmin", word_json(s.argmin[k])}});
  }
  return Json{{"per_length", rows}, {"periodic_upper", s.periodic_upper}, {"periodic_word", word_json(s.periodic_word)}};
}

Json to_json(const RankOneResult& r) {
  Json images = Json::array();
  for (const auto& a : r.images) images.push_back(to_json(a));
  return Json{{"interval", to_json(r.interval)}, {"images", images}};
}

namespace {

Json status_json(const WitnessStatus& s) {
  Json out{{"status", to_string(s.kind)}};
  if (s.depth) out["depth"] = s.depth;
  if (!s.basis.empty()) out["basis"] = s.basis;
  if (s.witness) out["witness"] = to_json(*s.witness);
  return out;
}

}  // namespace

Json to_json(const LociReport& r) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["n"] = r.n;
  Json classes = Json::array();
  for (MapClass c : r.generator_classes) classes.push_back(to_string(c));
  out["generator_classes"] = classes;
  out["elementary"] = to_json(r.elementary);
  if (r.affine) out["exact_affine"] = to_json(*r.affine);
  out["in_E"] = status_json(r.in_E);
  out["inverse_free"] = status_json(r.inverse_free);

  Json h{{"status", to_string(r.in_H.kind)}};
  if (r.in_H.certificate) h["certificate"] = to_json(*r.in_H.certificate);
  if (r.in_H.negative) {
    const auto& n = *r.in_H.negative;
    Json neg{{"kind", to_string(n.kind)}, {"detail", n.detail}};
    if (n.witness) neg["witness"] = to_json(*n.witness);
    if (n.point) neg["point"] = point_json(*n.point);
    if (!n.forward_word.empty()) neg["fwd_word"] = word_json(n.forward_word);
    if (!n.backward_word.empty()) neg["bwd_word"] = word_json(n.backward_word);
    if (n.generator >= 0) neg["generator"] = n.generator + 1;
    h["negative"] = neg;
  }
  if (r.in_H.search_failure) h["search_failure"] = to_json(*r.in_H.search_failure);
  if (!r.in_H.note.empty()) h["note"] = r.in_H.note;
  out["in_H"] = h;

  Json sd{{"status", to_string(r.semidiscrete.kind)},
          {"structurally_semidiscrete", r.semidiscrete.structurally_semidiscrete}};
  if (r.semidiscrete.witness) sd["witness"] = to_json(*r.semidiscrete.witness);
  if (r.semidiscrete.inference) sd["inference"] = to_json(*r.semidiscrete.inference);
  if (r.semidiscrete.best_candidate) sd["best_candidate"] = to_json(*r.semidiscrete.best_candidate);
  if (!r.semidiscrete.note.empty()) sd["note"] = r.semidiscrete.note;
  out["semidiscrete"] = sd;

  out["rank_one"] = r.rank_one ? to_json(*r.rank_one) : Json(nullptr);
  out["in_P"] = Json{{"status", to_string(r.in_P.kind)},
                     {"reason", r.in_P.reason},
                     {"fully_certified", r.in_P.fully_certified}};
  if (r.forward) out["forward_limit_set"] = to_json(*r.forward);
  if (r.backward) out["backward_limit_set"] = to_json(*r.backward);
  if (r.cores) out["cores"] = to_json(*r.cores);
  if (r.spectral) out["spectral"] = to_json(*r.spectral);
  out["partial"] = r.partial;
  out["notes"] = r.notes;
  out["consistency"] = to_json(sdc_crosscheck(r));
  return out;
}

Json to_json(const ConsistencyVerdict& v) {
  return Json{{"consistent", v.consistent}, {"rules_checked", v.rules_checked}, {"violations", v.violations}};
}

}  // namespace mobius
