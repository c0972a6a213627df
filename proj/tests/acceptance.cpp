// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "core_checks.hpp"
#include "corpus.hpp"
#include "mobius/error.hpp"
#include "mobius/hyperbolicity.hpp"
#include "mobius/limit_sets.hpp"
#include "mobius/loci.hpp"
#include "mobius/semigroup.hpp"
#include "support.hpp"

using namespace mobius;
using namespace mobius::test;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

BoundaryPoint R(double x) { return BoundaryPoint::from_real(x); }

const Tuple kF0 = parse_tuple("2 1 0 1\n1 0 0 3\n5 -4 0 1\n");
const Tuple kHump = parse_tuple("2 0 0 1\n1 2 0 2\n");
const Tuple kDiag = parse_tuple("2 0 0 1\n3 0 0 1\n");
const Tuple kUh = parse_tuple("4 0 0 1\n5 4 4 5\n");
const Tuple kAnti = parse_tuple("10 12 3 10\n5 -3 -3 5\n");

void f0_end_to_end(Outcome& o) {
  const LociReport r = classify(kF0, preset("quick"));
  o.require(r.affine && r.affine->status == AffineStatus::Certified, "exact no-elliptic certificate");
  o.require(r.in_E.kind == WitnessStatus::Kind::CertifiedNo, "in_E certified no");
  const auto& w = r.semidiscrete.witness;
  o.require(w && w->word.size() <= 9 && w->distance <= 0.25 && revalidate(kF0.maps, *w), "identity approach word");
  if (w) o.detail << "word " << word_to_string(w->word) << " distance " << w->distance << "; ";
  o.require(r.elementary.kind == ElementaryKind::CommonBoundaryFixed && r.elementary.point->is_infinity(1e-9),
            "elementary at infinity");
  const auto& inf = r.semidiscrete.inference;
  o.require(inf && std::abs(inf->backward_point.point.to_real() - 1.0) < 1e-9, "inference at point 1");
  o.require(r.in_P.kind == PStatus::Kind::Yes, "in_P = Yes");
  o.detail << "in_P " << to_string(r.in_P.kind) << "; ";
}

void limitset(Outcome& o) {
  const LimitSetApprox ls = forward_limit_set(kHump.maps, 14, 0.02);
  o.require(ls.hull.arcs.size() == 1 && !ls.hull.is_full(), "single arc");
  if (ls.hull.arcs.size() != 1) return;
  const Arc& a = ls.hull.arcs[0];
  const double lo = angular_distance(a.end_point(), R(2)), hi = angular_distance(a.start_point(), R(kInf));
  o.require(lo <= 0.05 && hi <= 0.05, "endpoints within 0.05 rad of [2, inf]");
  o.detail << "hull " << to_string(a) << " endpoint errors " << lo << ", " << hi << " rad; ";
}

void ls_inter(Outcome& o) {
  const Tuple full = parse_tuple("1 0 0 2\n1 1 0 2\n"), holed = parse_tuple("1 0 0 2\n1 2 0 3\n");
  o.require(ls_inter_full_interval(full.maps[0], full.maps[1], 0.0, 1.0), "full branch criterion");
  o.require(!ls_inter_full_interval(holed.maps[0], holed.maps[1], 0.0, 1.0), "gap branch criterion");
  auto reals = [](const LimitSetApprox& ls) {
    std::vector<double> xs{0.0, 1.0};
    for (const auto& p : ls.points) {
      const double x = p.point.to_real();
      if (x >= 0 && x <= 1) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
  };
  const auto xs = reals(forward_limit_set(full.maps, 12, 0.01));
  double gap = 0;
  for (std::size_t k = 1; k < xs.size(); ++k) gap = std::max(gap, xs[k] - xs[k - 1]);
  o.require(gap <= 0.01, "full branch fills [0,1] within 0.01");
  const auto ys = reals(forward_limit_set(holed.maps, 12, 0.01));
  double lo = 0, hi = 1;
  for (double y : ys) {
    if (y <= 0.55) lo = std::max(lo, y);
    if (y >= 0.62) hi = std::min(hi, y);
  }
  const bool hole = std::none_of(ys.begin(), ys.end(), [](double y) { return y > 0.55 && y < 0.62; });
  o.require(hole, "gap branch hole contains (0.55, 0.62)");
  o.detail << "max gap " << gap << "; hole (" << lo << ", " << hi << "); ";
}

void multicone_soundness(Outcome& o) {
  std::mt19937_64 rng(2024);
  for (const auto& [t, comps] : {std::pair{&kDiag, 1ul}, std::pair{&kUh, 2ul}}) {
    const MulticoneResult r = find_multicone(t->maps);
    o.require(r.ok(), "multicone found");
    if (!r.ok()) continue;
    const ArcUnion& m = r.certificate->multicone;
    o.require(m.arcs.size() == comps, "component count");
    const MulticoneVerification v = verify_multicone(t->maps, *r.certificate);
    o.require(v.ok, "verify_multicone");
    o.require(v.growth_slope > 0.05, "growth slope > 0.05");
    // Independent sampling of 1000 words of length <= 30.
    std::uniform_int_distribution<int> len(1, 30), letter(0, static_cast<int>(t->size()) - 1);
    int inside = 0;
    for (int k = 0; k < 1000; ++k) {
      Word w(static_cast<std::size_t>(len(rng)));
      for (int& c : w) c = letter(rng);
      inside += strictly_inside(word_image(t->maps, w, m), m, 0.0);
    }
    o.require(inside == 1000, "random words map the closure into M");
    o.detail << m.arcs.size() << " arc(s), slope " << v.growth_slope << ", " << inside << "/1000 words; ";
  }
}

void negative_certification(Outcome& o) {
  for (const Tuple* t : {&kF0, &kHump}) {
    const MulticoneResult r = find_multicone(t->maps);
    o.require(!r.ok() && r.failure->kind == MulticoneFailureKind::LimitSetsTouch && r.failure->point &&
                  r.failure->point->is_infinity(1e-9),
              "LimitSetsTouch at infinity");
    o.require(classify(*t, preset("quick")).in_H.kind == HStatus::Kind::CertifiedNo, "in_H CertifiedNo");
  }
  o.detail << "f0 and hump: touch at inf, in_H CertifiedNo; ";
}

void jorgensen(Outcome& o) {
  const Rational j = jorgensen_exact((*kHump.exact)[0], (*kHump.exact)[1]);
  o.require(j == Rational(1, 2), "hump value 1/2");
  o.require(!jorgensen_check(kHump.maps[0], kHump.maps[1]).satisfied, "below one");
  const auto r = rank_one_test(kHump.maps);
  o.require(r.has_value(), "hump rank one");
  o.require(!rank_one_test(kAnti.maps), "antiparallel pair not rank one");
  o.detail << "value " << to_string(j);
  if (r) o.detail << ", interval " << to_string(r->interval);
  o.detail << "; ";
}

void commutator_translation(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.2, 5.0), kap(-3.0, 3.0);
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    const MoebiusMap g = random_map(rng, 1.5);
    const MoebiusMap h = conjugate(g, MoebiusMap::affine(lam(rng), kap(rng)));
    const MoebiusMap kk = conjugate(g, MoebiusMap::affine(lam(rng), kap(rng)));
    worst = std::max(worst, std::abs(std::abs(commutator(h, kk).trace()) - 2.0));
  }
  o.require(worst <= 1e-9, "|tr [h,k]| = 2 within 1e-9");
  int exact_ok = 0;
  for (int k = 0; k < 10000; ++k) {
    const Rational a = positive_rational(rng), b = small_rational(rng, 9, 5);
    const Rational c = positive_rational(rng), d = small_rational(rng, 9, 5);
    const ExactAffine h(a, b), kk(c, d), hi(1 / a, -b / a), ki(1 / c, -d / c);
    const ExactAffine comm = h.compose(kk).compose(hi).compose(ki);
    exact_ok += comm.lambda() == 1 && comm.kappa() == (a - 1) * d - (c - 1) * b;
  }
  o.require(exact_ok == 10000, "exact translation (a-1)d - (c-1)b");
  o.detail << "max trace error " << worst << ", exact " << exact_ok << "/10000; ";
}

void spectral(Outcome& o) {
  double worst = 0;
  for (const auto& [len, root] : lower_spectral_estimate(kDiag.maps, 8).per_length) {
    worst = std::max(worst, std::abs(root - std::sqrt(2.0)));
  }
  o.require(worst <= 1e-9, "(2z,3z) at sqrt 2");
  const Tuple cancel = parse_tuple("2 0 0 1\n1 0 0 2\n");
  const double l2 = lower_spectral_estimate(cancel.maps, 2).per_length[1].second;
  o.require(l2 == 1.0, "(2z,z/2) exactly 1 at L=2");
  const double f9 = lower_spectral_estimate(kF0.maps, 9).per_length[8].second;
  o.require(f9 <= 1.02, "f0 min_norm_root(9) <= 1.02");
  o.detail << "diag error " << worst << ", cancel L2 " << l2 << ", f0 L9 " << f9 << "; ";
}

void cores(Outcome& o) {
  std::mt19937_64 rng(99);
  int tested = 0, failed = 0;
  for (int trial = 0; tested < 20 && trial < 200; ++trial) {
    const std::vector<MoebiusMap> gens = tested == 0 ? kHump.maps : random_uh_tuple(rng, 2 + trial % 2);
    if (tested > 0 && !find_multicone(gens).ok()) continue;
    ++tested;
    const auto bad = core_violations(gens, 10, 0.02);
    if (!bad.empty()) {
      ++failed;
      o.detail << "tuple " << tested << ": " << bad.front() << "; ";
    }
  }
  o.require(tested == 20 && failed == 0, "core properties on 20 finite-rank tuples");
  o.detail << tested << " tuples, " << failed << " with violations; ";
}

void consistency(Outcome& o) {
  const std::vector<Tuple> corpus = regression_corpus(200, 2026);
  int inconsistent = 0, flips = 0;
  for (const Tuple& t : corpus) {
    const LociReport q = classify(t, preset("quick")), th = classify(t, preset("thorough"));
    inconsistent += !sdc_crosscheck(q).consistent + !sdc_crosscheck(th).consistent;
    const bool h_flip = q.in_H.kind != HStatus::Kind::Unknown && q.in_H.kind != th.in_H.kind;
    const bool e_flip = (q.in_E.kind == WitnessStatus::Kind::Witness || q.in_E.kind == WitnessStatus::Kind::CertifiedNo) &&
                        q.in_E.kind != th.in_E.kind;
    const bool s_flip = q.semidiscrete.kind != SemidiscreteStatus::Kind::NoRefutationUpToBudget &&
                        th.semidiscrete.kind == SemidiscreteStatus::Kind::NoRefutationUpToBudget;
    const bool p_flip = q.in_P.fully_certified && q.in_P.kind != th.in_P.kind;
    flips += h_flip || e_flip || s_flip || p_flip;
  }
  o.require(inconsistent == 0, "sdc_crosscheck on the corpus");
  o.require(flips == 0, "quick to thorough monotonicity");
  o.detail << corpus.size() << " tuples, " << inconsistent << " inconsistent, " << flips << " flips; ";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;  // 0: no runtime bound
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "f0 end-to-end", 10, f0_end_to_end},
      {2, "limit set of (2z, z/2+1) is [2, inf]", 5, limitset},
      {3, "interval criterion, both branches", 5, ls_inter},
      {4, "multicone soundness", 10, multicone_soundness},
      {5, "negative hyperbolicity certificates", 5, negative_certification},
      {6, "Jorgensen / rank-one coherence", 0, jorgensen},
      {7, "commutators with a common fixed point", 0, commutator_translation},
      {8, "lower spectral estimates", 0, spectral},
      {9, "core invariants", 0, cores},
      {10, "classifier consistency and monotonicity", 0, consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0) o.require(secs <= c.limit_s, "runtime limit");
    failures += !o.pass;
    std::printf("%s  criterion %2d  %-42s %8.3f s", o.pass ? "PASS" : "FAIL", c.id, c.title, secs);
    if (c.limit_s > 0) std::printf(" (limit %.0f s)", c.limit_s);
    std::printf("  %s\n", o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
