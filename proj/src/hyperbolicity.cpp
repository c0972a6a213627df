#include "mobius/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include "mobius/error.hpp"

namespace mobius {

const char* to_string(MulticoneFailureKind k) {
  switch (k) {
    case MulticoneFailureKind::NonHyperbolicGenerator: return "NonHyperbolicGenerator";
    case MulticoneFailureKind::LimitSetsTouch: return "LimitSetsTouch";
    case MulticoneFailureKind::Budget: return "Budget";
  }
  return "?";
}

namespace {

ArcUnion balls(const std::vector<WordPoint>& pts, double r) {
  std::vector<Arc> arcs;
  arcs.reserve(pts.size());
  for (const auto& p : pts) arcs.push_back(Arc{p.point.theta() - r, 2 * r, false});
  return merge_arcs(std::move(arcs));
}

bool meets_any(const ArcUnion& u, const std::vector<WordPoint>& pts) {
  return std::any_of(pts.begin(), pts.end(), [&](const WordPoint& p) { return u.closure_contains(p.point); });
}

}  // namespace

MulticoneResult find_multicone(MapSpan gens, const MulticoneConfig& cfg) {
  MulticoneResult out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const MapClass c = classify_map(gens[i]);
    if (c != MapClass::Hyperbolic) {
      MulticoneFailure f;
      f.kind = MulticoneFailureKind::NonHyperbolicGenerator;
      f.generator = static_cast<int>(i);
      f.detail = "generator " + std::to_string(i + 1) + " is " + to_string(c);
      out.failure = f;
      return out;
    }
  }
  const WordFixedPoints fp = hyperbolic_word_fixed_points(gens, cfg.seed_depth);
  // Among touching pairs prefer the shortest witness words.
  double sep = kPi;
  const WordPoint *pa = nullptr, *pr = nullptr;
  auto shorter = [](const WordPoint& a, const WordPoint& r, const WordPoint* ba, const WordPoint* br) {
    const std::size_t l = a.word.size() + r.word.size(), bl = ba->word.size() + br->word.size();
    if (l != bl) return l < bl;
    return std::tie(a.word, r.word) < std::tie(ba->word, br->word);
  };
  for (const auto& a : fp.attracting) {
    for (const auto& r : fp.repelling) {
      const double d = angular_distance(a.point, r.point);
      const bool touch = d < 1e-6;
      const bool best_touch = pa && sep < 1e-6;
      if (!pa || (touch && !best_touch) || (touch && best_touch && shorter(a, r, pa, pr)) ||
          (!touch && !best_touch && d < sep)) {
        sep = d;
        pa = &a;
        pr = &r;
      }
    }
  }
  if (pa && sep < 1e-6) {
    MulticoneFailure f;
    f.kind = MulticoneFailureKind::LimitSetsTouch;
    f.point = pa->point;
    f.attracting_word = pa->word;
    f.repelling_word = pr->word;
    f.separation = sep;
    f.detail = "attracting point of " + word_to_string(pa->word) + " meets repelling point of " +
               word_to_string(pr->word);
    out.failure = f;
    return out;
  }
  const double eta = 2 * cfg.margin;
  std::string last_reason = "no radius converged";
  for (int j = 1; j <= cfg.radius_steps; ++j) {
    const double r = 0.5 * sep * std::ldexp(1.0, -j);
    ArcUnion m = balls(fp.attracting, r);
    for (int k = 0; k < cfg.max_iter; ++k) {
      ArcUnion next = m;
      for (const auto& g : gens) next = unite(next, fatten(arc_image(g, m), eta));
      if (meets_any(next, fp.repelling)) {
        last_reason = "grown union reached a repelling point";
        break;
      }
      if (next.arcs.size() > cfg.max_components) {
        last_reason = "component cap " + std::to_string(cfg.max_components) + " hit";
        break;
      }
      if (strictly_inside(next, fatten(m, 1e-9), 0.0)) {
        MulticoneCertificate cert;
        cert.multicone = next;
        cert.margin = cfg.margin;
        cert.word_depth_used = cfg.seed_depth;
        cert.radius = r;
        cert.iterations = k + 1;
        bool ok = true;
        for (const auto& g : gens) {
          cert.per_generator_images.push_back(arc_image(g, next));
          ok = ok && strictly_inside(cert.per_generator_images.back(), next, cfg.margin);
        }
        if (ok) {
          out.certificate = std::move(cert);
          return out;
        }
        last_reason = "stable union failed the margin check";
        break;
      }
      m = std::move(next);
    }
  }
  MulticoneFailure f;
  f.kind = MulticoneFailureKind::Budget;
  f.separation = sep;
  f.detail = last_reason;
  out.failure = f;
  return out;
}

ArcUnion word_image(MapSpan gens, const Word& w, const ArcUnion& u) {
  std::vector<Arc> arcs = u.arcs;
  for (int i : w) {
    for (Arc& a : arcs) a = track_arc(gens[static_cast<std::size_t>(i)], a);
  }
  return merge_arcs(std::move(arcs));
}

MulticoneVerification verify_multicone(MapSpan gens, const MulticoneCertificate& cert,
                                       int random_words, int max_len, std::uint64_t seed) {
  MulticoneVerification v;
  const ArcUnion& m = cert.multicone;
  if (m.empty() || m.is_full()) {
    v.detail = "multicone is empty or the whole circle";
    return v;
  }
  if (merge_arcs(m.arcs).arcs.size() != m.arcs.size()) {
    v.detail = "arc closures are not disjoint";
    return v;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!strictly_inside(arc_image(gens[i], m), m, cert.margin)) {
      v.detail = "generator " + std::to_string(i + 1) + " image not inside at margin";
      return v;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(gens.size()) - 1);
  std::vector<double> min_log(static_cast<std::size_t>(max_len) + 1, INFINITY);
  std::vector<std::pair<int, double>> samples;
  for (int s = 0; s < random_words; ++s) {
    Word w(static_cast<std::size_t>(len_dist(rng)));
    for (int& x : w) x = letter(rng);
    if (!strictly_inside(word_image(gens, w, m), m, 0.0)) {
      v.detail = "word " + word_to_string(w) + " escapes";
      return v;
    }
    const double ln = std::log(evaluate(gens, w).spectral_norm());
    const int n = static_cast<int>(w.size());
    samples.emplace_back(n, ln);
    min_log[static_cast<std::size_t>(n)] = std::min(min_log[static_cast<std::size_t>(n)], ln);
    ++v.words_checked;
  }
  // Least squares line through the per-length minima.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (int n = 1; n <= max_len; ++n) {
    const double y = min_log[static_cast<std::size_t>(n)];
    if (!std::isfinite(y)) continue;
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += n * y;
    ++cnt;
  }
  if (cnt >= 2) v.growth_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  for (const auto& [n, ln] : samples) v.growth_offset = std::max(v.growth_offset, n * v.growth_slope - ln);
  v.ok = true;
  v.detail = "ok";
  return v;
}

SpectralEstimate lower_spectral_estimate(MapSpan gens, int l_max, std::uint64_t budget) {
  SpectralEstimate est;
  std::vector<double> best(static_cast<std::size_t>(l_max) + 1, INFINITY);
  est.argmin.resize(static_cast<std::size_t>(l_max) + 1);
  double periodic = INFINITY;
  enumerate_words(
      gens, l_max,
      [&](const Word& w, const MoebiusMap& p) {
        const double n = static_cast<double>(w.size());
        const double root = std::exp(std::log(p.spectral_norm()) / n);
        auto& b = best[w.size()];
        if (root < b) {
          b = root;
          est.argmin[w.size()] = w;
        }
        const double pr = std::exp(std::log(p.spectral_radius()) / n);
        if (pr < periodic) {
          periodic = pr;
          est.periodic_word = w;
        }
        return true;
      },
      budget);
  for (int l = 1; l <= l_max; ++l) est.per_length.emplace_back(l, best[static_cast<std::size_t>(l)]);
  est.argmin.erase(est.argmin.begin());
  est.periodic_upper = periodic;
  return est;
}

bool maps_strictly_into(const MoebiusMap& f, const Arc& j, double tol) {
  if (j.is_full() || j.point_like) return false;
  const Arc img = arc_image(f, j);
  double off = forward_offset(j.start_point(), img.start_point());
  if (off > kPi - tol) off -= kPi;
  const double end_off = off + img.length;
  if (off < -tol || end_off > j.length + tol) return false;
  return !(std::abs(off) <= tol && std::abs(end_off - j.length) <= tol);
}

namespace {

struct Labeled {
  BoundaryPoint point;
  int key;
};

// Harmonic conjugate of s with respect to p and q.
BoundaryPoint harmonic_conjugate(BoundaryPoint p, BoundaryPoint q, BoundaryPoint s) {
  const double px = std::cos(p.theta()), py = std::sin(p.theta());
  const double qx = std::cos(q.theta()), qy = std::sin(q.theta());
  const double sx = std::cos(s.theta()), sy = std::sin(s.theta());
  const double det = px * qy - py * qx;
  const double alpha = (sx * qy - sy * qx) / det;
  const double beta = (px * sy - py * sx) / det;
  return BoundaryPoint::from_vector(alpha * px - beta * qx, alpha * py - beta * qy);
}

}  // namespace

std::optional<RankOneResult> rank_one_test(MapSpan gens) {
  std::vector<Labeled> pts;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const FixedPointData fp = fixed_points(gens[i]);
    if (fp.map_class == MapClass::Identity || fp.map_class == MapClass::Elliptic) return std::nullopt;
    const int base = 2 * static_cast<int>(i);
    auto add = [&](BoundaryPoint p, int key) {
      for (auto& q : pts) {
        if (angular_distance(p, q.point) <= 1e-10) {
          q.key = std::min(q.key, key);
          return;
        }
      }
      pts.push_back({p, key});
    };
    add(*fp.attracting, base);
    if (fp.repelling) add(*fp.repelling, base + 1);
  }
  std::sort(pts.begin(), pts.end(), [](const Labeled& l, const Labeled& r) { return l.point.theta() < r.point.theta(); });
  const std::size_t n = pts.size();
  std::vector<Labeled> cand = pts;
  for (std::size_t k = 0; k < n; ++k) {
    const Labeled& p = pts[k];
    const Labeled& q = pts[(k + 1) % n];
    BoundaryPoint inner;
    if (n >= 3) {
      inner = harmonic_conjugate(p.point, q.point, pts[(k + 2) % n].point);
    } else if (n == 2) {
      inner = BoundaryPoint(p.point.theta() + 0.5 * forward_offset(p.point, q.point));
    } else {
      inner = BoundaryPoint(p.point.theta() + 0.5 * kPi);
    }
    cand.push_back({inner, 1000 + p.key});
  }
  std::sort(cand.begin(), cand.end(), [](const Labeled& l, const Labeled& r) { return l.key < r.key; });
  for (const auto& s : cand) {
    for (const auto& t : cand) {
      if (s.key == t.key) continue;
      const Arc j = Arc::between(s.point, t.point);
      if (j.length < 1e-9) continue;
      bool all = true;
      for (const auto& g : gens) {
        if (!maps_strictly_into(g, j)) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      RankOneResult r;
      r.interval = j;
      for (const auto& g : gens) r.images.push_back(arc_image(g, j));
      return r;
    }
  }
  return std::nullopt;
}

JorgensenValue jorgensen_check(const MoebiusMap& f, const MoebiusMap& g) {
  const double t = f.trace();
  const double v = std::abs(t * t - 4.0) + std::abs(std::abs(commutator(f, g).trace()) - 2.0);
  return {v, v >= 1.0};
}

Rational jorgensen_exact(const RationalMatrix& f, const RationalMatrix& g) {
  Rational v = abs(squared_trace(f) - 4) + abs(commutator_abs_trace(f, g) - 2);
  v.canonicalize();
  return v;
}

bool antiparallel_check(const MoebiusMap& f, const MoebiusMap& g) {
  for (const MoebiusMap* m : {&f, &g}) {
    const MapClass c = classify_map(*m);
    if (c == MapClass::Identity || c == MapClass::Elliptic) {
      throw Error(ErrorCode::PreconditionFailed, "antiparallel pairs are hyperbolic or parabolic");
    }
  }
  for (const auto& p : boundary_fixed_points(f)) {
    for (const auto& q : boundary_fixed_points(g)) {
      if (angular_distance(p, q) <= 1e-10) throw Error(ErrorCode::CommonFixedPoint, "pair shares a fixed point");
    }
  }
  const std::vector<MoebiusMap> pair{f, g};
  return !rank_one_test(pair).has_value();
}

}  // namespace mobius
