#include "mobius/limit_sets.hpp"

#include <algorithm>
#include <cmath>

#include "mobius/error.hpp"
#include "mobius/hyperbolicity.hpp"

namespace mobius {

const char* to_string(LimitMethod m) {
  return m == LimitMethod::FixedPoints ? "FixedPoints" : "OrbitClosure";
}

const char* to_string(ElementaryKind k) {
  switch (k) {
    case ElementaryKind::CommonBoundaryFixed: return "CommonBoundaryFixed";
    case ElementaryKind::CommonInteriorFixed: return "CommonInteriorFixed";
    case ElementaryKind::InvariantPair: return "InvariantPair";
    case ElementaryKind::NonElementary: return "NonElementary";
  }
  return "?";
}

BoundaryPoint disc_direction(std::complex<double> w) { return BoundaryPoint(-0.5 * std::arg(w)); }

namespace {

std::vector<WordPoint> orbit_points(MapSpan gens, int depth, std::uint64_t budget) {
  std::vector<WordPoint> pts;
  const std::complex<double> i(0.0, 1.0);
  enumerate_words(
      gens, depth,
      [&](const Word& w, const MoebiusMap& p) {
        const std::complex<double> z = p.apply(i);
        const std::complex<double> d = (z - i) / (z + i);
        if (std::abs(d) >= 1.0 - 1e-3) pts.push_back({disc_direction(d), w});
        return true;
      },
      budget);
  return pts;
}

LimitSetApprox finish(LimitSetApprox ls) {
  if (!ls.points.empty()) {
    std::vector<BoundaryPoint> raw;
    raw.reserve(ls.points.size());
    for (const auto& p : ls.points) raw.push_back(p.point);
    ls.hull = merge_points_to_arcs(std::move(raw), ls.gap);
  }
  return ls;
}

}  // namespace

LimitSetApprox forward_limit_set(MapSpan gens, int depth, double gap, std::uint64_t budget) {
  LimitSetApprox ls;
  ls.depth = depth;
  ls.gap = gap;
  ls.points = hyperbolic_word_fixed_points(gens, depth, budget).attracting;
  if (ls.points.empty()) {
    ls.method = LimitMethod::OrbitClosure;
    ls.points = orbit_points(gens, depth, budget);
  }
  return finish(std::move(ls));
}

LimitSetApprox backward_limit_set(MapSpan gens, int depth, double gap, std::uint64_t budget) {
  LimitSetApprox ls;
  ls.forward = false;
  ls.depth = depth;
  ls.gap = gap;
  ls.points = hyperbolic_word_fixed_points(gens, depth, budget).repelling;
  if (ls.points.empty()) {
    std::vector<MoebiusMap> inv;
    for (const auto& g : gens) inv.push_back(g.inverse());
    ls.method = LimitMethod::OrbitClosure;
    ls.points = orbit_points(inv, depth, budget);
    for (auto& p : ls.points) std::reverse(p.word.begin(), p.word.end());
  }
  return finish(std::move(ls));
}

AffineInterval affine_limit_interval(const ExactAffine& f, const ExactAffine& g) {
  const Rational &a = f.lambda(), &b = f.kappa(), &c = g.lambda(), &d = g.kappa();
  if (b != 0) throw Error(ErrorCode::PreconditionFailed, "f must fix 0 (f = az)");
  if (!(a > 1)) throw Error(ErrorCode::PreconditionFailed, "need a > 1");
  if (!(c > 0 && c < 1)) throw Error(ErrorCode::PreconditionFailed, "need 0 < c < 1");
  Rational lower = d / (1 - c);
  lower.canonicalize();
  if (!(lower > 0)) throw Error(ErrorCode::PreconditionFailed, "need d/(1-c) > 0");
  return {lower};
}

bool ls_inter_full_interval(const MoebiusMap& f, const MoebiusMap& g, double x, double y) {
  if (!(x < y)) throw Error(ErrorCode::PreconditionFailed, "need x < y");
  const BoundaryPoint px = BoundaryPoint::from_real(x), py = BoundaryPoint::from_real(y);
  if (angular_distance(f.apply(px), px) > 1e-10) throw Error(ErrorCode::PreconditionFailed, "f(x) != x");
  if (angular_distance(g.apply(py), py) > 1e-10) throw Error(ErrorCode::PreconditionFailed, "g(y) != y");
  const Arc j = Arc::real_interval(x, y);
  if (!maps_strictly_into(f, j) || !maps_strictly_into(g, j)) {
    throw Error(ErrorCode::PreconditionFailed, "(x, y) is not mapped strictly inside itself");
  }
  // Distance from x measured towards y.
  auto chart = [&](BoundaryPoint p) { return forward_offset(p, px); };
  return chart(g.apply(px)) <= chart(f.apply(py)) + 1e-12;
}

bool ls_inter_full_interval(const RationalMatrix& f, const RationalMatrix& g, const Rational& x,
                            const Rational& y) {
  if (!(x < y)) throw Error(ErrorCode::PreconditionFailed, "need x < y");
  const auto fx = f.apply(x), gy = g.apply(y);
  if (!fx || *fx != x) throw Error(ErrorCode::PreconditionFailed, "f(x) != x");
  if (!gy || *gy != y) throw Error(ErrorCode::PreconditionFailed, "g(y) != y");
  const Arc j = Arc::real_interval(x.get_d(), y.get_d());
  if (!maps_strictly_into(f.to_map(), j) || !maps_strictly_into(g.to_map(), j)) {
    throw Error(ErrorCode::PreconditionFailed, "(x, y) is not mapped strictly inside itself");
  }
  const auto gx = g.apply(x), fy = f.apply(y);
  if (!gx || !fy) throw Error(ErrorCode::PreconditionFailed, "image left the finite line");
  return *gx <= *fy;
}

namespace {

// Complement components of `hull` holding an `other` point; sets core.
ArcUnion core_of(const LimitSetApprox& ls, const LimitSetApprox& other, std::vector<CoreGap>& removed,
                 bool& degenerate) {
  if (ls.hull.is_full()) {
    degenerate = true;
    return ls.hull;
  }
  if (ls.hull.empty()) return ls.hull;
  std::vector<Arc> keep = ls.hull.arcs;
  for (const Arc& gap : complement(ls.hull)) {
    auto it = std::find_if(other.points.begin(), other.points.end(),
                           [&](const WordPoint& p) { return gap.contains(p.point, 1e-9); });
    if (it == other.points.end()) {
      keep.push_back(gap);
    } else {
      removed.push_back({gap, *it});
    }
  }
  return merge_arcs(std::move(keep));
}

}  // namespace

CoreSet compute_cores(const LimitSetApprox& fwd, const LimitSetApprox& bwd) {
  if (fwd.gap != bwd.gap) throw Error(ErrorCode::PreconditionFailed, "limit sets use different gaps");
  CoreSet c;
  c.forward = core_of(fwd, bwd, c.forward_removed, c.degenerate);
  c.backward = core_of(bwd, fwd, c.backward_removed, c.degenerate);
  return c;
}

namespace {

bool same_point(BoundaryPoint p, BoundaryPoint q) { return angular_distance(p, q) <= 1e-10; }

}  // namespace

ElementaryStatus elementary_check(MapSpan gens) {
  ElementaryStatus st;
  std::vector<FixedPointData> fps;
  for (const auto& g : gens) fps.push_back(fixed_points(g));
  const bool all_trivial =
      std::all_of(fps.begin(), fps.end(), [](const FixedPointData& f) { return f.all_fixed; });
  if (all_trivial) {
    st.kind = ElementaryKind::CommonInteriorFixed;
    st.interior = std::complex<double>(0.0, 1.0);
    return st;
  }
  const auto ref = std::find_if(fps.begin(), fps.end(), [](const FixedPointData& f) { return !f.all_fixed; });
  // Common interior fixed point: every nontrivial generator elliptic about it.
  if (ref->interior) {
    const std::complex<double> z = *ref->interior;
    const bool common = std::all_of(fps.begin(), fps.end(), [&](const FixedPointData& f) {
      return f.all_fixed || (f.interior && std::abs(*f.interior - z) <= 1e-9 * std::max(1.0, std::abs(z)));
    });
    if (common) {
      st.kind = ElementaryKind::CommonInteriorFixed;
      st.interior = z;
      return st;
    }
  }
  // Boundary points shared by every nontrivial generator.
  std::vector<BoundaryPoint> cand = boundary_fixed_points(gens[static_cast<std::size_t>(ref - fps.begin())]);
  for (const BoundaryPoint& p : cand) {
    const bool common = std::all_of(gens.begin(), gens.end(), [&](const MoebiusMap& g) { return same_point(g.apply(p), p); });
    if (common) {
      st.kind = ElementaryKind::CommonBoundaryFixed;
      st.point = p;
      return st;
    }
  }
  // Pairs fixed or swapped by every generator.
  std::vector<BoundaryPoint> all;
  for (const auto& g : gens) {
    for (const auto& p : boundary_fixed_points(g)) {
      if (std::none_of(all.begin(), all.end(), [&](BoundaryPoint q) { return same_point(p, q); })) all.push_back(p);
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const BoundaryPoint p = all[i], q = all[j];
      const bool invariant = std::all_of(gens.begin(), gens.end(), [&](const MoebiusMap& g) {
        const BoundaryPoint gp = g.apply(p), gq = g.apply(q);
        return (same_point(gp, p) && same_point(gq, q)) || (same_point(gp, q) && same_point(gq, p));
      });
      if (invariant) {
        st.kind = ElementaryKind::InvariantPair;
        st.point = p;
        st.second = q;
        return st;
      }
    }
  }
  return st;
}

std::optional<NotSemidiscreteConclusion> nonsd_inference(MapSpan gens, const LimitSetApprox& fwd,
                                                         const LimitSetApprox& bwd,
                                                         bool inverse_free_up_to_depth) {
  if (!inverse_free_up_to_depth) return std::nullopt;
  for (const WordPoint& b : bwd.points) {
    for (const Arc& a : fwd.hull.arcs) {
      if (a.point_like || !a.contains(b.point, fwd.gap)) continue;
      NotSemidiscreteConclusion c;
      c.backward_point = b;
      c.forward_arc = a;
      double best = kPi;
      for (const WordPoint& f : fwd.points) {
        const double d = angular_distance(f.point, b.point);
        if (d < best) {
          best = d;
          c.forward_witness = f.word;
        }
      }
      for (std::size_t i = 0; i < gens.size(); ++i) c.subtuple.push_back(static_cast<int>(i));
      c.non_elementary = !elementary_check(gens).elementary();
      if (!c.non_elementary) c.assumptions.push_back("tuple is elementary: the non-elementary hypothesis is not met");
      c.assumptions.push_back("semigroup is not a group: no inverse pair up to the scan depth");
      return c;
    }
  }
  return std::nullopt;
}

std::optional<NotSemidiscreteConclusion> nonsd_search(MapSpan gens, int depth, double gap,
                                                      bool inverse_free_up_to_depth) {
  if (!inverse_free_up_to_depth) return std::nullopt;
  const std::size_t n = gens.size();
  const LimitSetApprox bwd = backward_limit_set(gens, depth, gap);
  for (std::size_t size = 1; size <= n; ++size) {
    // Subsets of this size in lexicographic order.
    std::vector<int> idx(size);
    for (std::size_t k = 0; k < size; ++k) idx[k] = static_cast<int>(k);
    while (true) {
      std::vector<MoebiusMap> sub;
      for (int i : idx) sub.push_back(gens[static_cast<std::size_t>(i)]);
      LimitSetApprox fwd = forward_limit_set(sub, depth, gap);
      for (auto& p : fwd.points) {
        for (int& l : p.word) l = idx[static_cast<std::size_t>(l)];
      }
      if (auto c = nonsd_inference(gens, fwd, bwd, true)) {
        c->subtuple = idx;
        return c;
      }
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == static_cast<int>(n - size + k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t m = k; m < size; ++m) idx[m] = idx[m - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace mobius
