#include <doctest.h>

#include <algorithm>
#include <random>

#include "core_checks.hpp"
#include "mobius/error.hpp"
#include "mobius/hyperbolicity.hpp"
#include "mobius/limit_sets.hpp"
#include "support.hpp"

using namespace mobius;
using namespace mobius::test;

namespace {

BoundaryPoint R(double x) { return BoundaryPoint::from_real(x); }

const std::vector<MoebiusMap> kF0{MoebiusMap(2, 1, 0, 1), MoebiusMap(1, 0, 0, 3), MoebiusMap(5, -4, 0, 1)};
const std::vector<MoebiusMap> kHump{MoebiusMap(2, 0, 0, 1), MoebiusMap(1, 2, 0, 2)};
const std::vector<MoebiusMap> kUh{MoebiusMap(4, 0, 0, 1), MoebiusMap(5, 4, 4, 5)};

/// Images of the endpoints 0 and 1 under all words of length <= depth of the
/// affine contractions z -> p z + q, sorted; computed without the library.
std::vector<double> ifs_orbit(const std::vector<std::pair<double, double>>& maps, int depth) {
  std::vector<double> level{0.0, 1.0}, all = level;
  for (int k = 0; k < depth; ++k) {
    std::vector<double> next;
    for (double x : level) {
      for (auto [p, q] : maps) next.push_back(p * x + q);
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

double max_gap(const std::vector<double>& xs, double lo, double hi) {
  double prev = lo, best = 0;
  for (double x : xs) {
    if (x < lo || x > hi) continue;
    best = std::max(best, x - prev);
    prev = x;
  }
  return std::max(best, hi - prev);
}

std::vector<double> reals_in(const LimitSetApprox& ls, double lo, double hi) {
  std::vector<double> xs;
  for (const auto& p : ls.points) {
    const double x = p.point.to_real();
    if (x >= lo && x <= hi) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace

TEST_CASE("limit set points re-validate against their words") {
  for (const auto* gens : {&kF0, &kHump, &kUh}) {
    const LimitSetApprox f = forward_limit_set(*gens, 8);
    const LimitSetApprox b = backward_limit_set(*gens, 8);
    CHECK(f.method == LimitMethod::FixedPoints);
    for (const auto& p : f.points) {
      REQUIRE(angular_distance(*fixed_points(evaluate(*gens, p.word)).attracting, p.point) < 1e-9);
    }
    for (const auto& p : b.points) {
      REQUIRE(angular_distance(*fixed_points(evaluate(*gens, p.word)).repelling, p.point) < 1e-9);
    }
  }
}

TEST_CASE("forward limit set of (g1, g2) is the arc from 0 to infinity") {
  const std::vector<MoebiusMap> pair{kF0[0], kF0[1]};
  const LimitSetApprox ls = forward_limit_set(pair, 12, 0.02);
  REQUIRE(ls.hull.arcs.size() == 1);
  const Arc& a = ls.hull.arcs[0];
  CHECK(angular_distance(a.end_point(), R(0)) < 0.02);
  CHECK(angular_distance(a.start_point(), R(kInf)) < 0.02);
  CHECK(a.contains(R(1)));
}

TEST_CASE("orbit fallback for tuples without hyperbolic words") {
  const std::vector<MoebiusMap> par{MoebiusMap(1, 1, 0, 1)};
  const LimitSetApprox ls = forward_limit_set(par, 60);
  CHECK(ls.method == LimitMethod::OrbitClosure);
  REQUIRE(!ls.points.empty());
  for (const auto& p : ls.points) CHECK(p.point.is_infinity(0.1));
}

TEST_CASE("closed-form affine limit interval") {
  CHECK(affine_limit_interval(ExactAffine(2, 0), ExactAffine(Rational(1, 2), 1)).lower == 2);
  CHECK(affine_limit_interval(ExactAffine(3, 0), ExactAffine(Rational(1, 3), 2)).lower == 3);
  bool thrown = false;
  try {
    affine_limit_interval(ExactAffine(2, 0), ExactAffine(Rational(1, 2), 0));
  } catch (const Error& e) {
    thrown = e.code() == ErrorCode::PreconditionFailed;
  }
  CHECK(thrown);
}

TEST_CASE("property: closed form agrees with the depth-14 hull") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> an(3, 8), cn(1, 3), dn(1, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational a(an(rng), 2), c(cn(rng), 4), d(dn(rng), 3);
    const AffineInterval lim = affine_limit_interval(ExactAffine(a, 0), ExactAffine(c, d));
    const std::vector<MoebiusMap> gens{MoebiusMap::affine(a.get_d(), 0), MoebiusMap::affine(c.get_d(), d.get_d())};
    const LimitSetApprox ls = forward_limit_set(gens, 14, 0.02);
    REQUIRE(ls.hull.arcs.size() == 1);
    REQUIRE(angular_distance(ls.hull.arcs[0].end_point(), R(lim.lower.get_d())) <= 0.05);
    REQUIRE(angular_distance(ls.hull.arcs[0].start_point(), R(kInf)) <= 0.05);
  }
}

TEST_CASE("interval criterion, full branch") {
  const MoebiusMap f(1, 0, 0, 2), g(1, 1, 0, 2);
  CHECK(ls_inter_full_interval(f, g, 0.0, 1.0));
  const auto oracle = ifs_orbit({{0.5, 0.0}, {0.5, 0.5}}, 12);
  CHECK(max_gap(oracle, 0, 1) <= 0.01);
  const std::vector<MoebiusMap> gens{f, g};
  CHECK(max_gap(reals_in(forward_limit_set(gens, 12, 0.01), 0, 1), 0, 1) <= 0.01);
}

TEST_CASE("interval criterion, gap branch") {
  const MoebiusMap f(1, 0, 0, 2), g(1, 2, 0, 3);
  CHECK(!ls_inter_full_interval(f, g, 0.0, 1.0));
  const auto oracle = ifs_orbit({{0.5, 0.0}, {1.0 / 3, 2.0 / 3}}, 12);
  CHECK(std::none_of(oracle.begin(), oracle.end(), [](double x) { return x > 0.5 + 1e-12 && x < 2.0 / 3 - 1e-12; }));
  const std::vector<MoebiusMap> gens{f, g};
  const auto xs = reals_in(forward_limit_set(gens, 12, 0.01), 0, 1);
  CHECK(std::none_of(xs.begin(), xs.end(), [](double x) { return x > 0.55 && x < 0.62; }));
  CHECK(std::any_of(xs.begin(), xs.end(), [](double x) { return x <= 0.55; }));
  CHECK(std::any_of(xs.begin(), xs.end(), [](double x) { return x >= 0.62; }));
}

TEST_CASE("interval criterion, boundary equality and preconditions") {
  const RationalMatrix f{1, 0, 0, 2}, g{1, 1, 0, 2};
  CHECK(*g.apply(0) == *f.apply(1));
  CHECK(ls_inter_full_interval(f, g, Rational(0), Rational(1)));
  CHECK(!ls_inter_full_interval(RationalMatrix{1, 0, 0, 2}, RationalMatrix{1, 2, 0, 3}, Rational(0), Rational(1)));
  bool thrown = false;
  try {
    ls_inter_full_interval(MoebiusMap(1, 0, 0, 2), MoebiusMap(1, 1, 0, 2), 0.5, 1.0);
  } catch (const Error& e) {
    thrown = e.code() == ErrorCode::PreconditionFailed;
  }
  CHECK(thrown);
}

TEST_CASE("cores") {
  const CoreSet uh = compute_cores(forward_limit_set(kUh, 10), backward_limit_set(kUh, 10));
  CHECK(!uh.degenerate);
  CHECK(uh.forward.arcs.size() == uh.backward.arcs.size());
  CHECK(core_violations(kUh, 10, 0.02).empty());

  const CoreSet h = compute_cores(forward_limit_set(kHump, 12), backward_limit_set(kHump, 12));
  REQUIRE(h.forward.arcs.size() == 1);
  CHECK(angular_distance(h.forward.arcs[0].end_point(), R(2)) <= 0.05);
  CHECK(h.backward.closure_contains(R(-1)));
  CHECK(h.backward.closure_contains(R(kInf)));
  CHECK(h.forward.closure_contains(R(kInf)));

  CHECK(forward_limit_set(kF0, 10, 0.02).hull.is_full());
  const CoreSet f0 = compute_cores(forward_limit_set(kF0, 10, 0.02), backward_limit_set(kF0, 10, 0.02));
  CHECK(f0.degenerate);
}

TEST_CASE("property: forward invariance of the approximate limit set") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<MoebiusMap> gens = trial == 0 ? kHump : random_uh_tuple(rng);
    const LimitSetApprox ls = forward_limit_set(gens, 10, 0.02);
    for (const MoebiusMap& g : gens) {
      for (const auto& p : ls.points) REQUIRE(ls.hull.distance_to(g.apply(p.point)) <= 0.02);
    }
  }
}

TEST_CASE("property: core invariants on finite-rank tuples") {
  std::mt19937_64 rng(3);
  int tested = 0;
  for (int trial = 0; tested < 20 && trial < 100; ++trial) {
    std::vector<MoebiusMap> gens = tested == 0 ? kHump : random_uh_tuple(rng, 2 + trial % 2);
    if (tested > 0 && !find_multicone(gens).ok()) continue;
    ++tested;
    const auto bad = core_violations(gens, 10, 0.02);
    const std::string first = bad.empty() ? std::string() : bad.front();
    INFO(first);
    REQUIRE(bad.empty());
  }
  CHECK(tested == 20);
}

TEST_CASE("elementary detection") {
  const ElementaryStatus f0 = elementary_check(kF0);
  CHECK(f0.kind == ElementaryKind::CommonBoundaryFixed);
  CHECK(f0.point->is_infinity(1e-9));

  const std::vector<MoebiusMap> rots{MoebiusMap::rotation(0.4), MoebiusMap::rotation(1.1)};
  const ElementaryStatus r = elementary_check(rots);
  CHECK(r.kind == ElementaryKind::CommonInteriorFixed);
  CHECK(std::abs(*r.interior - std::complex<double>(0, 1)) < 1e-9);

  CHECK(elementary_check(kUh).kind == ElementaryKind::NonElementary);

  const std::vector<MoebiusMap> swap{MoebiusMap(2, 0, 0, 1), MoebiusMap(0, -1, 1, 0)};
  const ElementaryStatus s = elementary_check(swap);
  CHECK(s.kind == ElementaryKind::InvariantPair);
  const std::vector<MoebiusMap> ids{MoebiusMap(), MoebiusMap()};
  CHECK(elementary_check(ids).kind == ElementaryKind::CommonInteriorFixed);
}

TEST_CASE("property: elementary detection is conjugation covariant") {
  std::mt19937_64 rng(4);
  const std::vector<std::vector<MoebiusMap>> cases{
      kF0, kUh, {MoebiusMap(2, 0, 0, 1), MoebiusMap(0, -1, 1, 0)}, {MoebiusMap::rotation(0.4), MoebiusMap::rotation(1.1)}};
  for (int trial = 0; trial < 50; ++trial) {
    const auto& gens = cases[trial % cases.size()];
    const MoebiusMap g = random_map(rng, 1.5);
    std::vector<MoebiusMap> conj;
    for (const MoebiusMap& m : gens) conj.push_back(conjugate(g, m));
    const ElementaryStatus a = elementary_check(gens), b = elementary_check(conj);
    REQUIRE(a.kind == b.kind);
    if (a.kind == ElementaryKind::CommonBoundaryFixed) {
      REQUIRE(angular_distance(g.apply(*a.point), *b.point) < 1e-8);
    }
    if (a.kind == ElementaryKind::CommonInteriorFixed) REQUIRE(std::abs(g.apply(*a.interior) - *b.interior) < 1e-8);
    if (a.kind == ElementaryKind::InvariantPair) {
      const BoundaryPoint p = g.apply(*a.point), q = g.apply(*a.second);
      const bool same = (angular_distance(p, *b.point) < 1e-8 && angular_distance(q, *b.second) < 1e-8) ||
                        (angular_distance(p, *b.second) < 1e-8 && angular_distance(q, *b.point) < 1e-8);
      REQUIRE(same);
    }
  }
}

TEST_CASE("non-semidiscreteness inference") {
  const auto f0 = nonsd_search(kF0, 10, 0.02, true);
  REQUIRE(f0);
  CHECK(f0->backward_point.point.to_real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f0->backward_point.word == Word{2});
  CHECK(f0->forward_arc.contains(R(1.0)));
  CHECK(!f0->assumptions.empty());
  CHECK(!nonsd_search(kF0, 10, 0.02, false));
  CHECK(!nonsd_search(kUh, 10, 0.02, true));
  CHECK(!nonsd_search(kHump, 10, 0.02, true));
}
