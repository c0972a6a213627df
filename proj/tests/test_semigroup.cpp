#include <doctest.h>

#include <random>

#include "mobius/error.hpp"
#include "mobius/semigroup.hpp"
#include "mobius/tuple_io.hpp"
#include "support.hpp"

using namespace mobius;
using namespace mobius::test;

namespace {

const Tuple& f0() {
  static const Tuple t = parse_tuple("2 1 0 1\n1 0 0 3\n5 -4 0 1\n");
  return t;
}

/// Normalized distance from the identity of z -> lambda z + kappa, by hand.
double affine_distance(double lambda, double kappa) {
  const double s = std::sqrt(lambda);
  const Mat m{s, kappa / s, 0, 1 / s};
  return frob_psl(m, {1, 0, 0, 1});
}

}  // namespace

TEST_CASE("word evaluation applies the first letter first") {
  const std::vector<MoebiusMap> gens{MoebiusMap(2, 1, 0, 1), MoebiusMap(1, 0, 0, 3)};
  const Word w{0, 1, 1};
  const MoebiusMap p = evaluate(gens, w);
  // x -> g2(g2(g1(x)))
  const double x = 0.7, expect = (2 * x + 1) / 9;
  CHECK(p.apply(BoundaryPoint::from_real(x)).to_real() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(word_to_string(w) == "[1,2,2]");
  const std::vector<ExactAffine> ex{ExactAffine(2, 1), ExactAffine(Rational(1, 3), 0)};
  CHECK(evaluate(ex, w) == ExactAffine(Rational(2, 9), Rational(1, 9)));
}

TEST_CASE("enumeration counts and order") {
  const std::vector<MoebiusMap> one{MoebiusMap(2, 0, 0, 1)};
  int count = 0;
  enumerate_words(one, 3, [&](const Word&, const MoebiusMap&) { return ++count, true; });
  CHECK(count == 3);

  const std::vector<MoebiusMap> three(f0().maps);
  std::vector<Word> seen;
  enumerate_words(three, 2, [&](const Word& w, const MoebiusMap&) { return seen.push_back(w), true; });
  REQUIRE(seen.size() == 12);
  CHECK(seen[0] == Word{0});
  CHECK(seen[3] == Word{0, 0});
  CHECK(seen[4] == Word{0, 1});
  CHECK(seen[11] == Word{2, 2});

  std::uint64_t n9 = 0;
  enumerate_words(three, 9, [&](const Word& w, const MoebiusMap& m) {
    if (n9 % 997 == 0) REQUIRE(psl_distance(m, evaluate(three, w)) < 1e-9 * m.frobenius_norm());
    return ++n9, true;
  });
  CHECK(n9 == 29523);
  CHECK(word_count(3, 9) == 29523);
}

TEST_CASE("enumeration refuses oversize budgets before visiting") {
  const std::vector<MoebiusMap> three(f0().maps);
  int visited = 0;
  bool thrown = false;
  try {
    enumerate_words(three, 9, [&](const Word&, const MoebiusMap&) { return ++visited, true; }, 1000);
  } catch (const Error& e) {
    thrown = e.code() == ErrorCode::BudgetExceeded;
  }
  CHECK(thrown);
  CHECK(visited == 0);
}

TEST_CASE("elliptic and identity words") {
  const std::vector<MoebiusMap> rot{MoebiusMap(2, 0, 0, 1), MoebiusMap::rotation(1.0)};
  const auto w = find_elliptic_or_identity(rot, 4);
  REQUIRE(w);
  CHECK(w->word == Word{1});
  CHECK(w->kind == WitnessKind::EllipticWitness);
  CHECK(revalidate(rot, *w));

  const std::vector<MoebiusMap> cancel{MoebiusMap(2, 0, 0, 1), MoebiusMap(1, 0, 0, 2)};
  const auto id = find_elliptic_or_identity(cancel, 4);
  REQUIRE(id);
  CHECK(id->kind == WitnessKind::IdentityWitness);
  CHECK(word_to_string(id->word) == "[1,2]");
  CHECK(revalidate(cancel, *id));

  CHECK(!find_elliptic_or_identity(f0().maps, 10));
}

TEST_CASE("exact affine certification") {
  const AffineCertificate c = certify_no_elliptic_affine(f0());
  CHECK(c.status == AffineStatus::Certified);
  REQUIRE(c.affine);
  CHECK(c.affine->exponents == std::vector<std::vector<int>>{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});

  const AffineCertificate r = certify_no_elliptic_affine(parse_tuple("2 0 0 1\n1 0 0 2\n"));
  CHECK(r.status == AffineStatus::Refuted);
  REQUIRE(r.witness);
  CHECK(r.witness->word == Word{0, 1});
  CHECK(r.witness->kind == WitnessKind::IdentityWitness);

  const AffineCertificate s = certify_no_elliptic_affine(parse_tuple("2 1 0 1\n3 0 0 1\n"));
  CHECK(s.status == AffineStatus::Certified);
  // Oracle: no 2^x 3^y = 1 with small nonnegative exponents.
  for (int x = 0; x <= 20; ++x) {
    for (int y = 0; x + y <= 20; ++y) {
      const BigInt lhs = BigInt(1) << x;
      BigInt rhs = 1;
      for (int k = 0; k < y; ++k) rhs *= 3;
      if (x + y > 0) CHECK(lhs * rhs != 1);
    }
  }

  CHECK(certify_no_elliptic_affine(parse_tuple("2 0 0 1\n5 4 4 5\n")).status == AffineStatus::Inapplicable);
  CHECK(certify_no_elliptic_affine(parse_tuple("2.5 0 0 1\n0.5 1 0 1\n")).status != AffineStatus::Inapplicable);
}

TEST_CASE("exponent cone feasibility") {
  CHECK(!exponent_cone_point({{1, 0}, {0, 1}}));
  const auto p = exponent_cone_point({{2, -1}, {-3, 1}, {1, 1}});
  REQUIRE(p);
  // Check V x = 0 by hand.
  const std::vector<std::vector<int>> cols{{2, -1}, {-3, 1}, {1, 1}};
  for (int k = 0; k < 2; ++k) {
    Rational s = 0;
    for (int i = 0; i < 3; ++i) s += (*p)[i] * cols[i][k];
    CHECK(s == 0);
  }
  Rational total = 0;
  for (const auto& v : *p) {
    CHECK(v >= 0);
    total += v;
  }
  CHECK(total == 1);
}

TEST_CASE("f0 identity approach") {
  // The exhibited word g2^4 g1 g1 g1 g3 g1 (g1 applied first), checked exactly.
  const std::vector<ExactAffine> ex{ExactAffine(2, 1), ExactAffine(Rational(1, 3), 0), ExactAffine(5, -4)};
  ExactAffine h;
  for (int letter : {0, 2, 0, 0, 0, 1, 1, 1, 1}) h = ex[letter].compose(h);
  CHECK(h.lambda() == Rational(80, 81));
  CHECK(h.kappa() == Rational(5, 27));
  const double exhibited = affine_distance(80.0 / 81, 15.0 / 81);
  CHECK(exhibited == doctest::Approx(0.186).epsilon(1e-2));

  const SemidiscreteSearch s = refute_semidiscrete(f0());
  REQUIRE(s.witness);
  CHECK(s.witness->kind == WitnessKind::IdentityApproach);
  CHECK(s.witness->word.size() <= 9);
  CHECK(s.witness->distance <= exhibited + 1e-12);
  CHECK(revalidate(f0().maps, *s.witness));
  // Independent recomputation from the letters.
  ExactAffine e;
  for (int letter : s.witness->word) e = ex[letter].compose(e);
  CHECK(affine_distance(e.lambda().get_d(), e.kappa().get_d()) == doctest::Approx(s.witness->distance).epsilon(1e-9));
}

TEST_CASE("semidiscrete pair and rotations") {
  SemidiscreteConfig cfg;
  cfg.max_len = 12;
  const SemidiscreteSearch hump = refute_semidiscrete(parse_tuple("2 0 0 1\n1 2 0 2\n"), cfg);
  CHECK(!hump.witness);

  const Tuple rot = make_tuple({MoebiusMap::rotation(1.0)});
  double prev = INFINITY, first = 0;
  for (int len : {3, 6, 12, 24, 48}) {
    SemidiscreteConfig c;
    c.max_len = len;
    c.threshold = 1e-9;
    const SemidiscreteSearch s = refute_semidiscrete(rot, c);
    REQUIRE(s.best);
    CHECK(s.best->distance <= prev);
    if (len == 3) first = s.best->distance;
    prev = s.best->distance;
  }
  CHECK(prev < 0.5 * first);
}

TEST_CASE("inverse-free violations") {
  std::mt19937_64 rng(1);
  const MoebiusMap g = random_hyperbolic(rng);
  const std::vector<MoebiusMap> pair{g, g.inverse()};
  const auto v = inverse_free_violation(pair, 4);
  REQUIRE(v);
  CHECK(v->word.size() == 2);
  CHECK(revalidate(pair, *v));
  CHECK(!inverse_free_violation(f0().maps, 8));
  CHECK(!inverse_free_violation(std::vector<MoebiusMap>{MoebiusMap(4, 0, 0, 1), MoebiusMap(5, 4, 4, 5)}, 8));
}

TEST_CASE("translation accumulation") {
  const ExactAffine f(2, 0), g(Rational(1, 2), 1);
  CHECK(translation_accumulation(f, g, 3) == ExactAffine(1, Rational(7, 4)));
  CHECK(translation_accumulation(f, g, 1) == ExactAffine(1, 1));
  CHECK(std::abs(translation_accumulation(f, g, 60).kappa().get_d() - 2.0) < 1e-12);
  bool thrown = false;
  try {
    translation_accumulation(f, ExactAffine(Rational(1, 3), 1), 2);
  } catch (const Error& e) {
    thrown = e.code() == ErrorCode::PreconditionFailed;
  }
  CHECK(thrown);
}

TEST_CASE("property: translation accumulation matches composition chains") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7), lam(2, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational a(lam(rng), den(rng));
    const ExactAffine f(a, Rational(num(rng), den(rng)));
    Rational c = 1 / a;
    c.canonicalize();
    const ExactAffine g(c, Rational(num(rng), den(rng)));
    for (int n = 0; n <= 20; ++n) {
      ExactAffine chain;
      for (int k = 0; k < n; ++k) chain = f.compose(chain);
      for (int k = 0; k < n; ++k) chain = g.compose(chain);
      REQUIRE(translation_accumulation(f, g, n) == chain);
    }
  }
}

TEST_CASE("property: exact certification agrees with brute force") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ex(-3, 3), kap(-4, 4), pick(0, 3);
  int certified = 0, refuted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RationalMatrix> mats;
    for (int i = 0; i < 2; ++i) {
      Rational lambda = 1;
      const int e2 = ex(rng), e3 = ex(rng);
      for (int k = 0; k < std::abs(e2); ++k) lambda = e2 > 0 ? Rational(lambda * 2) : Rational(lambda / 2);
      for (int k = 0; k < std::abs(e3); ++k) lambda = e3 > 0 ? Rational(lambda * 3) : Rational(lambda / 3);
      const Rational kappa = pick(rng) == 0 ? Rational(0) : Rational(kap(rng));
      mats.push_back({lambda, kappa, 0, 1});
    }
    const Tuple t = make_tuple(mats);
    const AffineCertificate c = certify_no_elliptic_affine(t);
    REQUIRE(c.status != AffineStatus::Inapplicable);
    const auto brute = find_elliptic_or_identity(t.maps, 12);
    if (c.status == AffineStatus::Certified) {
      ++certified;
      REQUIRE(!brute);
    } else {
      ++refuted;
      REQUIRE(c.witness);
      REQUIRE(revalidate(t.maps, *c.witness));
      const ExactAffine w = evaluate(make_affine_tuple({ExactAffine(mats[0].a, mats[0].b), ExactAffine(mats[1].a, mats[1].b)}).maps, c.witness->word);
      REQUIRE(w.lambda() == 1);
      if (c.witness->kind == WitnessKind::IdentityWitness) {
        REQUIRE(brute);
        REQUIRE(brute->word.size() <= c.witness->word.size());
      } else if (brute) {
        REQUIRE(brute->kind == WitnessKind::IdentityWitness);
      }
    }
  }
  CHECK(certified > 5);
  CHECK(refuted > 5);
}

TEST_CASE("property: witnesses re-evaluate from their letters") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MoebiusMap> gens{random_map(rng), random_map(rng)};
    if (auto w = find_elliptic_or_identity(gens, 6)) REQUIRE(revalidate(gens, *w));
    SemidiscreteConfig cfg;
    cfg.max_len = 6;
    cfg.beam_width = 64;
    const SemidiscreteSearch s = refute_semidiscrete(make_tuple(gens), cfg);
    if (s.witness) REQUIRE(revalidate(gens, *s.witness));
    if (s.best) REQUIRE(psl_distance(evaluate(gens, s.best->word), s.best->product) < 1e-9);
  }
}

TEST_CASE("property: repeated runs are identical") {
  const SemidiscreteSearch a = refute_semidiscrete(f0()), b = refute_semidiscrete(f0());
  REQUIRE(a.witness);
  REQUIRE(b.witness);
  CHECK(a.witness->word == b.witness->word);
  CHECK(a.witness->distance == b.witness->distance);
}

TEST_CASE("hyperbolic word fixed points are deduplicated in enumeration order") {
  const std::vector<MoebiusMap> gens{MoebiusMap(2, 0, 0, 1), MoebiusMap(3, 0, 0, 1)};
  const WordFixedPoints fp = hyperbolic_word_fixed_points(gens, 4);
  REQUIRE(fp.attracting.size() == 1);
  CHECK(fp.attracting[0].word == Word{0});
  CHECK(fp.attracting[0].point.is_infinity(1e-12));
  REQUIRE(fp.repelling.size() == 1);
  CHECK(std::abs(fp.repelling[0].point.to_real()) < 1e-12);
}
