#include "mobius/loci.hpp"

#include "mobius/error.hpp"

namespace mobius {

ClassifyConfig preset(std::string_view name) {
  ClassifyConfig c;
  if (name == "quick") return c;
  if (name == "thorough") {
    c.elliptic_depth = 10;
    c.inverse_depth = 8;
    c.limit_depth = 10;
    c.nonsd_depth = 10;
    c.spectral_depth = 8;
    c.seed_depths = {6, 8};
    c.semidiscrete.max_len = 11;
    return c;
  }
  throw Error(ErrorCode::PreconditionFailed, "unknown preset '" + std::string(name) + "'");
}

const char* to_string(NegativeCertificate::Kind k) {
  switch (k) {
    case NegativeCertificate::Kind::EllipticWord: return "EllipticWord";
    case NegativeCertificate::Kind::IdentityApproach: return "IdentityApproach";
    case NegativeCertificate::Kind::LimitSetIntersection: return "LimitSetIntersection";
    case NegativeCertificate::Kind::NonHyperbolicGenerator: return "NonHyperbolicGenerator";
  }
  return "?";
}

const char* to_string(HStatus::Kind k) {
  switch (k) {
    case HStatus::Kind::CertifiedYes: return "CertifiedYes";
    case HStatus::Kind::CertifiedNo: return "CertifiedNo";
    case HStatus::Kind::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(WitnessStatus::Kind k) {
  switch (k) {
    case WitnessStatus::Kind::Witness: return "Witness";
    case WitnessStatus::Kind::CertifiedNo: return "CertifiedNo";
    case WitnessStatus::Kind::NoneUpToDepth: return "NoneUpToDepth";
    case WitnessStatus::Kind::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(SemidiscreteStatus::Kind k) {
  switch (k) {
    case SemidiscreteStatus::Kind::RefutedWitness: return "RefutedWitness";
    case SemidiscreteStatus::Kind::RefutedByInference: return "RefutedByInference";
    case SemidiscreteStatus::Kind::NoRefutationUpToBudget: return "NoRefutationUpToBudget";
  }
  return "?";
}

const char* to_string(PStatus::Kind k) {
  switch (k) {
    case PStatus::Kind::Yes: return "Yes";
    case PStatus::Kind::No: return "No";
    case PStatus::Kind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

// Runs a stage, turning budget exhaustion into a partial report.
template <class F>
bool guarded(LociReport& r, const char* stage, F&& f) {
  try {
    f();
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    r.partial = true;
    r.notes.push_back(std::string(stage) + ": " + e.what());
    return false;
  }
}

}  // namespace

LociReport classify(const Tuple& t, const ClassifyConfig& cfg) {
  using WK = WitnessStatus::Kind;
  LociReport r;
  const MapSpan gens(t.maps);
  if (gens.empty()) throw Error(ErrorCode::EmptyInput, "empty tuple");
  r.n = gens.size();
  for (const auto& g : gens) r.generator_classes.push_back(classify_map(g));
  r.elementary = elementary_check(gens);

  if (t.exact) {
    r.affine = certify_no_elliptic_affine(t);
    if (r.affine->status == AffineStatus::Inapplicable) r.notes.push_back("exact affine test: " + r.affine->reason);
  }
  const bool exact_certified = r.affine && r.affine->status == AffineStatus::Certified;

  // Elliptic locus.
  if (exact_certified) {
    r.in_E.kind = WK::CertifiedNo;
    r.in_E.basis = "no multiplier-one word (exact exponent cone)";
  } else if (r.affine && r.affine->witness && r.affine->witness->kind == WitnessKind::IdentityWitness) {
    r.in_E.kind = WK::Witness;
    r.in_E.witness = r.affine->witness;
    r.in_E.basis = "exact cancelling word";
  } else {
    guarded(r, "elliptic search", [&] {
      r.in_E.depth = cfg.elliptic_depth;
      r.in_E.witness = find_elliptic_or_identity(gens, cfg.elliptic_depth, cfg.budget);
      r.in_E.kind = r.in_E.witness ? WK::Witness : WK::NoneUpToDepth;
    });
  }

  // Inverse-freeness.
  if (exact_certified) {
    r.inverse_free.kind = WK::CertifiedNo;
    r.inverse_free.basis = "no identity word (exact exponent cone)";
  } else {
    guarded(r, "inverse search", [&] {
      r.inverse_free.depth = cfg.inverse_depth;
      r.inverse_free.witness = inverse_free_violation(gens, cfg.inverse_depth, cfg.budget);
      r.inverse_free.kind = r.inverse_free.witness ? WK::Witness : WK::NoneUpToDepth;
    });
  }

  // Multicone.
  for (int depth : cfg.seed_depths) {
    MulticoneConfig mc = cfg.multicone;
    mc.seed_depth = depth;
    MulticoneResult res;
    if (!guarded(r, "multicone", [&] { res = find_multicone(gens, mc); })) break;
    if (res.certificate) {
      r.in_H.certificate = res.certificate;
      r.in_H.search_failure.reset();
      break;
    }
    r.in_H.search_failure = res.failure;
    if (res.failure->kind != MulticoneFailureKind::Budget) break;
  }

  r.rank_one = rank_one_test(gens);
  const bool finite_rank = r.in_H.certificate.has_value() || r.rank_one.has_value();

  // Limit sets, cores and the interior-intersection inference.
  guarded(r, "limit sets", [&] {
    r.forward = forward_limit_set(gens, cfg.limit_depth, cfg.gap, cfg.budget);
    r.backward = backward_limit_set(gens, cfg.limit_depth, cfg.gap, cfg.budget);
    if (!r.forward->points.empty() && !r.backward->points.empty()) {
      r.cores = compute_cores(*r.forward, *r.backward);
    }
  });
  if (r.inverse_free.kind != WK::Witness && r.inverse_free.kind != WK::Unknown) {
    guarded(r, "inference", [&] {
      r.semidiscrete.inference = nonsd_search(gens, cfg.nonsd_depth, cfg.gap, true);
    });
  }

  // Semidiscreteness.
  r.semidiscrete.structurally_semidiscrete = finite_rank;
  if (finite_rank) {
    r.semidiscrete.note = r.in_H.certificate ? "multicone found" : "rank-one interval found";
  } else {
    guarded(r, "identity approach", [&] {
      SemidiscreteConfig sc = cfg.semidiscrete;
      const SemidiscreteSearch s = refute_semidiscrete(t, sc);
      r.semidiscrete.witness = s.witness;
      r.semidiscrete.best_candidate = s.best;
      r.partial = r.partial || s.partial;
    });
  }
  if (r.semidiscrete.inference) {
    r.semidiscrete.kind = SemidiscreteStatus::Kind::RefutedByInference;
  } else if (r.semidiscrete.witness) {
    r.semidiscrete.kind = SemidiscreteStatus::Kind::RefutedWitness;
  }

  if (finite_rank && r.inverse_free.kind != WK::Witness) {
    r.inverse_free.kind = WK::CertifiedNo;
    r.inverse_free.basis = r.in_H.certificate ? "multicone" : "rank-one interval";
  }

  // Uniform hyperbolicity.
  using HK = HStatus::Kind;
  using NK = NegativeCertificate::Kind;
  if (r.in_H.certificate) {
    r.in_H.kind = HK::CertifiedYes;
  } else {
    NegativeCertificate neg;
    bool have = true;
    const auto& fail = r.in_H.search_failure;
    if (r.in_E.kind == WK::Witness) {
      neg.kind = NK::EllipticWord;
      neg.witness = r.in_E.witness;
      neg.detail = "semigroup contains an elliptic element or the identity";
    } else if (r.inverse_free.kind == WK::Witness) {
      neg.kind = NK::IdentityApproach;
      neg.witness = r.inverse_free.witness;
      neg.detail = "a word evaluates to the identity";
    } else if (fail && fail->kind == MulticoneFailureKind::NonHyperbolicGenerator) {
      neg.kind = NK::NonHyperbolicGenerator;
      neg.generator = fail->generator;
      neg.detail = fail->detail;
    } else if (fail && fail->kind == MulticoneFailureKind::LimitSetsTouch) {
      neg.kind = NK::LimitSetIntersection;
      neg.point = fail->point;
      neg.forward_word = fail->attracting_word;
      neg.backward_word = fail->repelling_word;
      neg.detail = fail->detail;
    } else if (r.semidiscrete.inference) {
      neg.kind = NK::IdentityApproach;
      neg.witness = r.semidiscrete.witness ? r.semidiscrete.witness : r.semidiscrete.best_candidate;
      neg.forward_word = r.semidiscrete.inference->forward_witness;
      neg.backward_word = r.semidiscrete.inference->backward_point.word;
      neg.point = r.semidiscrete.inference->backward_point.point;
      neg.detail = "not semidiscrete by interior limit-set intersection";
    } else {
      have = false;
    }
    if (have) {
      r.in_H.kind = HK::CertifiedNo;
      r.in_H.negative = neg;
    } else {
      r.in_H.kind = HK::Unknown;
      r.in_H.note = fail ? fail->detail : "multicone search did not run";
    }
  }

  // Locus P.
  using PK = PStatus::Kind;
  const bool refuted = r.semidiscrete.kind != SemidiscreteStatus::Kind::NoRefutationUpToBudget;
  if (!r.elementary.elementary()) {
    r.in_P = {PK::No, "non-elementary", true};
  } else if (r.inverse_free.kind == WK::Witness) {
    r.in_P = {PK::No, "not inverse-free", true};
  } else if (r.in_E.kind == WK::Witness) {
    r.in_P = {PK::No, "contains an elliptic element or the identity", true};
  } else if (finite_rank) {
    r.in_P = {PK::No, "semidiscrete (finite rank)", true};
  } else if (refuted && r.inverse_free.kind != WK::Unknown && r.in_E.kind != WK::Unknown) {
    const bool certified = r.inverse_free.kind == WK::CertifiedNo && r.in_E.kind == WK::CertifiedNo &&
                           r.semidiscrete.inference.has_value();
    r.in_P = {PK::Yes, "elementary, inverse-free, no elliptic element, not semidiscrete", certified};
  } else {
    r.in_P = {PK::Unknown, "semidiscreteness not refuted", false};
  }

  guarded(r, "spectral", [&] { r.spectral = lower_spectral_estimate(gens, cfg.spectral_depth, cfg.budget); });
  return r;
}

ConsistencyVerdict sdc_crosscheck(const LociReport& r) {
  ConsistencyVerdict v;
  const bool p_rules = r.n >= 3;
  const bool in_h = r.in_H.kind == HStatus::Kind::CertifiedYes;
  const bool in_p = r.in_P.kind == PStatus::Kind::Yes;
  const bool refuted = r.semidiscrete.kind != SemidiscreteStatus::Kind::NoRefutationUpToBudget;
  const bool e_witness = r.in_E.kind == WitnessStatus::Kind::Witness;
  const bool inv_witness = r.inverse_free.kind == WitnessStatus::Kind::Witness;
  const bool rank_one = r.rank_one.has_value();
  auto rule = [&](const char* name, bool applies, bool violated) {
    if (!applies) {
      v.rules_checked.push_back(std::string(name) + " (suppressed, N = 2)");
      return;
    }
    v.rules_checked.push_back(name);
    if (violated) {
      v.consistent = false;
      v.violations.push_back(name);
    }
  };
  rule("P and H", p_rules, in_p && in_h);
  rule("P and rank one", p_rules, in_p && rank_one);
  rule("H and semidiscreteness refuted", true, in_h && refuted);
  rule("H and elliptic witness", true, in_h && e_witness);
  rule("H and inverse witness", true, in_h && inv_witness);
  rule("rank one and semidiscreteness refuted", true, rank_one && refuted);
  rule("rank one and elliptic witness", true, rank_one && e_witness);
  rule("P and non-elementary", true, in_p && !r.elementary.elementary());
  return v;
}

}  // namespace mobius
