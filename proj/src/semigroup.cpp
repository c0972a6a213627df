#include "mobius/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "mobius/error.hpp"

namespace mobius {

MoebiusMap evaluate(MapSpan gens, const Word& w) {
  MoebiusMap p;
  for (int i : w) p = gens[static_cast<std::size_t>(i)] * p;
  return p;
}

ExactAffine evaluate(const std::vector<ExactAffine>& gens, const Word& w) {
  ExactAffine p;
  for (int i : w) p = gens[static_cast<std::size_t>(i)].compose(p);
  return p;
}

std::string word_to_string(const Word& w) {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < w.size(); ++k) out << (k ? "," : "") << w[k] + 1;
  out << ']';
  return out.str();
}

std::uint64_t word_count(std::size_t n, int max_len) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0, layer = 1;
  for (int l = 1; l <= max_len; ++l) {
    if (n != 0 && layer > kMax / n) return kMax;
    layer *= n;
    if (total > kMax - layer) return kMax;
    total += layer;
  }
  return total;
}

const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::EllipticWitness: return "EllipticWitness";
    case WitnessKind::IdentityWitness: return "IdentityWitness";
    case WitnessKind::InverseWitness: return "InverseWitness";
    case WitnessKind::IdentityApproach: return "IdentityApproach";
    case WitnessKind::UnitMultiplier: return "UnitMultiplier";
  }
  return "?";
}

const char* to_string(AffineStatus s) {
  switch (s) {
    case AffineStatus::Certified: return "Certified";
    case AffineStatus::Inapplicable: return "Inapplicable";
    case AffineStatus::Refuted: return "Refuted";
  }
  return "?";
}

WordWitness make_witness(MapSpan gens, Word w, WitnessKind kind) {
  WordWitness out;
  out.product = evaluate(gens, w);
  out.distance = psl_distance(out.product, MoebiusMap::identity());
  out.word = std::move(w);
  out.kind = kind;
  return out;
}

bool revalidate(MapSpan gens, const WordWitness& w, double tol) {
  if (w.word.empty()) return false;
  for (int i : w.word) {
    if (i < 0 || static_cast<std::size_t>(i) >= gens.size()) return false;
  }
  const MoebiusMap p = evaluate(gens, w.word);
  const double scale = std::max(1.0, p.frobenius_norm());
  if (psl_distance(p, w.product) > tol * scale) return false;
  switch (w.kind) {
    case WitnessKind::EllipticWitness: return classify_map(p) == MapClass::Elliptic;
    case WitnessKind::IdentityWitness: return is_identity(p, tol);
    case WitnessKind::InverseWitness:
      return w.split > 0 && w.split < w.word.size() && is_identity(p, tol);
    case WitnessKind::IdentityApproach:
      return std::abs(psl_distance(p, MoebiusMap::identity()) - w.distance) <= tol;
    case WitnessKind::UnitMultiplier: return std::abs(std::abs(p.trace()) - 2.0) <= 1e-9;
  }
  return false;
}

void enumerate_words(MapSpan gens, int max_len, const WordVisitor& visit, std::uint64_t budget) {
  if (gens.empty()) throw Error(ErrorCode::EmptyInput, "empty tuple");
  if (max_len < 1) throw Error(ErrorCode::PreconditionFailed, "max_len must be >= 1");
  const std::uint64_t count = word_count(gens.size(), max_len);
  if (count > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(count) + " words exceed budget " + std::to_string(budget));
  }
  const int n = static_cast<int>(gens.size());
  Word w;
  std::vector<MoebiusMap> prefix;  // prefix[k] = product of w[0..k]
  for (int len = 1; len <= max_len; ++len) {
    w.assign(static_cast<std::size_t>(len), 0);
    prefix.assign(static_cast<std::size_t>(len), MoebiusMap{});
    int valid = 0;  // prefix[0, valid) is up to date
    while (true) {
      for (int k = valid; k < len; ++k) {
        const MoebiusMap& g = gens[static_cast<std::size_t>(w[k])];
        prefix[k] = k == 0 ? g : g * prefix[k - 1];
      }
      if (!visit(w, prefix[len - 1])) return;
      int k = len - 1;
      while (k >= 0 && w[k] == n - 1) w[k--] = 0;
      if (k < 0) break;
      ++w[k];
      valid = k;
    }
  }
}

std::optional<WordWitness> find_elliptic_or_identity(MapSpan gens, int max_len, std::uint64_t budget) {
  std::optional<WordWitness> found;
  enumerate_words(
      gens, max_len,
      [&](const Word& w, const MoebiusMap& p) {
        const MapClass c = classify_map(p);
        if (c == MapClass::Identity || is_identity(p, 1e-10)) {
          found = make_witness(gens, w, WitnessKind::IdentityWitness);
        } else if (c == MapClass::Elliptic) {
          found = make_witness(gens, w, WitnessKind::EllipticWitness);
        }
        return !found;
      },
      budget);
  return found;
}

std::optional<WordWitness> inverse_free_violation(MapSpan gens, int max_len, std::uint64_t budget) {
  std::optional<WordWitness> found;
  enumerate_words(
      gens, max_len,
      [&](const Word& w, const MoebiusMap& p) {
        if (!is_identity(p, 1e-10)) return true;
        Word full = w;
        if (full.size() == 1) full.push_back(full[0]);  // an identity generator is its own inverse
        found = make_witness(gens, full, WitnessKind::InverseWitness);
        found->split = full.size() / 2;
        return false;
      },
      budget);
  return found;
}

namespace {

// Sorts by angle and merges neighbours within 1e-12 rad, keeping the word
// enumerated first.
std::vector<WordPoint> dedupe(std::vector<WordPoint> pts) {
  if (pts.empty()) return pts;
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return pts[l].point.theta() < pts[r].point.theta();
  });
  std::vector<std::size_t> keep;
  for (std::size_t idx : order) {
    if (!keep.empty() && pts[idx].point.theta() - pts[keep.back()].point.theta() <= 1e-12) {
      keep.back() = std::min(keep.back(), idx);
    } else {
      keep.push_back(idx);
    }
  }
  if (keep.size() > 1 && pts[keep.front()].point.theta() + kPi - pts[keep.back()].point.theta() <= 1e-12) {
    keep.front() = std::min(keep.front(), keep.back());
    keep.pop_back();
  }
  std::sort(keep.begin(), keep.end());
  std::vector<WordPoint> out;
  out.reserve(keep.size());
  for (std::size_t idx : keep) out.push_back(std::move(pts[idx]));
  return out;
}

}  // namespace

WordFixedPoints hyperbolic_word_fixed_points(MapSpan gens, int depth, std::uint64_t budget) {
  WordFixedPoints out;
  enumerate_words(
      gens, depth,
      [&](const Word& w, const MoebiusMap& p) {
        if (classify_map(p) != MapClass::Hyperbolic) return true;
        const FixedPointData fp = fixed_points(p);
        out.attracting.push_back({*fp.attracting, w});
        out.repelling.push_back({*fp.repelling, w});
        return true;
      },
      budget);
  out.attracting = dedupe(std::move(out.attracting));
  out.repelling = dedupe(std::move(out.repelling));
  return out;
}

namespace {

using Row = std::vector<Rational>;  // coefficients, then rhs; row . x <= rhs

// Scale so that the first nonzero coefficient has absolute value 1.
void normalize(Row& r) {
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    if (r[k] != 0) {
      const Rational s = abs(r[k]);
      for (auto& v : r) v /= s;
      return;
    }
  }
}

}  // namespace

std::optional<std::vector<Rational>> exponent_cone_point(const std::vector<std::vector<int>>& columns) {
  const std::size_t n = columns.size();
  if (n == 0) return std::nullopt;
  const std::size_t m = columns[0].size();
  // Equalities [V; 1...1] x = [0; 1] in reduced row echelon form.
  std::vector<Row> eq;
  for (std::size_t r = 0; r < m; ++r) {
    Row row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = columns[i][r];
    eq.push_back(row);
  }
  Row ones(n + 1, Rational(1));
  eq.push_back(ones);
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < eq.size(); ++col) {
    std::size_t p = rank;
    while (p < eq.size() && eq[p][col] == 0) ++p;
    if (p == eq.size()) continue;
    std::swap(eq[p], eq[rank]);
    const Rational inv = 1 / eq[rank][col];
    for (auto& v : eq[rank]) v *= inv;
    for (std::size_t r = 0; r < eq.size(); ++r) {
      if (r == rank || eq[r][col] == 0) continue;
      const Rational f = eq[r][col];
      for (std::size_t k = 0; k <= n; ++k) eq[r][k] -= f * eq[rank][k];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < eq.size(); ++r) {
    if (eq[r][n] != 0) return std::nullopt;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::size_t> free_vars;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_pivot[i]) free_vars.push_back(i);
  }
  const std::size_t f = free_vars.size();
  // x >= 0 in terms of the free variables y: -y_j <= 0 and
  // x_p = rhs - sum coef * y  >= 0  <=>  sum coef * y <= rhs.
  std::vector<Row> ineq;
  for (std::size_t j = 0; j < f; ++j) {
    Row row(f + 1);
    row[j] = -1;
    ineq.push_back(row);
  }
  for (std::size_t r = 0; r < rank; ++r) {
    Row row(f + 1);
    for (std::size_t j = 0; j < f; ++j) row[j] = eq[r][free_vars[j]];
    row[f] = eq[r][n];
    ineq.push_back(row);
  }
  // Fourier-Motzkin, remembering each stage for back substitution.
  std::vector<std::vector<Row>> stages{ineq};
  for (std::size_t j = 0; j < f; ++j) {
    const auto& cur = stages.back();
    std::vector<Row> pos, neg;
    std::set<Row> next;
    for (Row r : cur) {
      if (r[j] > 0) {
        pos.push_back(r);
      } else if (r[j] < 0) {
        neg.push_back(r);
      } else {
        normalize(r);
        next.insert(r);
      }
    }
    for (const Row& p : pos) {
      for (const Row& q : neg) {
        Row c(f + 1);
        const Rational sp = -q[j], sq = p[j];
        for (std::size_t k = 0; k <= f; ++k) c[k] = sp * p[k] + sq * q[k];
        c[j] = 0;
        normalize(c);
        next.insert(c);
      }
    }
    stages.emplace_back(next.begin(), next.end());
  }
  for (const Row& r : stages.back()) {
    if (r[f] < 0) return std::nullopt;
  }
  std::vector<Rational> y(f, Rational(0));
  for (std::size_t j = f; j-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const Row& r : stages[j]) {
      if (r[j] == 0) continue;
      Rational rest = r[f];
      for (std::size_t k = j + 1; k < f; ++k) rest -= r[k] * y[k];
      const Rational bound = rest / r[j];
      if (r[j] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else if (!lo || bound > *lo) {
        lo = bound;
      }
    }
    y[j] = lo ? *lo : (hi ? std::min(*hi, Rational(0)) : Rational(0));
  }
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t j = 0; j < f; ++j) x[free_vars[j]] = y[j];
  for (std::size_t r = 0; r < rank; ++r) {
    Rational v = eq[r][n];
    for (std::size_t j = 0; j < f; ++j) v -= eq[r][free_vars[j]] * y[j];
    x[pivot_col[r]] = v;
  }
  return x;
}

namespace {

// Smallest total count vector with V counts = 0, by increasing total.
std::optional<std::vector<int>> small_cancelling_counts(const ExactAffineTuple& t, int max_total) {
  const std::size_t n = t.maps.size(), m = t.prime_support.size();
  std::vector<int> counts(n, 0);
  std::optional<std::vector<int>> found;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int left) -> bool {
    if (i + 1 == n) {
      counts[i] = left;
      for (std::size_t k = 0; k < m; ++k) {
        long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += static_cast<long>(counts[j]) * t.exponents[j][k];
        if (s != 0) return false;
      }
      found = counts;
      return true;
    }
    for (int c = left; c >= 0; --c) {
      counts[i] = c;
      if (rec(i + 1, left - c)) return true;
    }
    return false;
  };
  for (int total = 1; total <= max_total; ++total) {
    if (rec(0, total)) return found;
  }
  return std::nullopt;
}

double multiset_permutations(const std::vector<int>& counts) {
  double total = 0, out = 1;
  for (int c : counts) {
    for (int k = 1; k <= c; ++k) {
      ++total;
      out = out * total / k;
    }
  }
  return out;
}

Word sorted_word(const std::vector<int>& counts) {
  Word w;
  for (std::size_t i = 0; i < counts.size(); ++i) w.insert(w.end(), static_cast<std::size_t>(counts[i]), static_cast<int>(i));
  return w;
}

}  // namespace

AffineCertificate certify_no_elliptic_affine(const ExactAffineTuple& affine, MapSpan gens) {
  AffineCertificate cert;
  cert.affine = affine;
  const std::size_t n = affine.maps.size();
  std::vector<int> counts;
  if (auto small = small_cancelling_counts(affine, n <= 6 ? 12 : 4)) {
    counts = *small;
  } else if (auto x = exponent_cone_point(affine.exponents)) {
    BigInt lcm = 1;
    for (const auto& v : *x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> ints;
    BigInt g = 0;
    for (const auto& v : *x) {
      ints.push_back(BigInt(v * lcm));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    for (auto& v : ints) {
      v /= g;
      if (!v.fits_sint_p() || v > 1'000'000) {
        cert.status = AffineStatus::Refuted;
        cert.reason = "cancelling exponent combination exists but is too long to spell";
        return cert;
      }
      counts.push_back(static_cast<int>(v.get_si()));
    }
  } else {
    cert.status = AffineStatus::Certified;
    cert.reason = "no nonzero nonnegative exponent combination cancels";
    return cert;
  }
  // Order the cancelling multiset, preferring an exact identity.
  Word w = sorted_word(counts);
  Word best = w;
  Rational best_k = abs(evaluate(affine.maps, w).kappa());
  std::uint64_t tried = 0;
  while (best_k != 0 && std::next_permutation(w.begin(), w.end()) && ++tried < 10'000) {
    const Rational k = abs(evaluate(affine.maps, w).kappa());
    if (k < best_k) {
      best_k = k;
      best = w;
    }
  }
  cert.status = AffineStatus::Refuted;
  const bool identity = best_k == 0;
  cert.reason = identity ? "word evaluates to the identity" : "word has multiplier exactly 1";
  cert.witness = make_witness(gens, best, identity ? WitnessKind::IdentityWitness : WitnessKind::UnitMultiplier);
  return cert;
}

AffineCertificate certify_no_elliptic_affine(const Tuple& t) {
  AffineCertificate cert;
  if (!t.exact) {
    cert.reason = "coefficients are not exact rationals";
    return cert;
  }
  auto affine = affine_form(*t.exact);
  if (!affine) {
    cert.reason = "no rational common boundary fixed point";
    return cert;
  }
  return certify_no_elliptic_affine(*affine, t.maps);
}

namespace {

struct Candidate {
  Word word;
  MoebiusMap product;
  double distance;
};

bool ranks_before(double ld, const Word& lw, double rd, const Word& rw) {
  if (ld != rd) return ld < rd;
  if (lw.size() != rw.size()) return lw.size() < rw.size();
  return lw < rw;
}

// Multiplier-only lower bound on the distance of z -> lambda z + kappa from Id.
double affine_lower_bound(double lambda) {
  const double s = std::sqrt(lambda);
  return std::hypot(s - 1.0, 1.0 / s - 1.0);
}

double kappa_of(const std::vector<double>& lam, const std::vector<double>& kap, const Word& w) {
  double k = 0.0;
  for (int i : w) k = lam[static_cast<std::size_t>(i)] * k + kap[static_cast<std::size_t>(i)];
  return k;
}

}  // namespace

SemidiscreteSearch refute_semidiscrete(const Tuple& t, const SemidiscreteConfig& cfg) {
  const MapSpan gens(t.maps);
  const MoebiusMap id;
  std::optional<Candidate> best;
  auto offer = [&](Word w, const MoebiusMap& p) {
    const double d = psl_distance(p, id);
    if (!best || ranks_before(d, w, best->distance, best->word)) best = Candidate{std::move(w), p, d};
  };

  // Beam search over lengths.
  std::vector<Candidate> beam;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    beam.push_back({Word{static_cast<int>(i)}, gens[i], psl_distance(gens[i], id)});
  }
  for (int len = 1; len <= cfg.max_len; ++len) {
    std::sort(beam.begin(), beam.end(), [](const Candidate& l, const Candidate& r) {
      return ranks_before(l.distance, l.word, r.distance, r.word);
    });
    if (beam.size() > cfg.beam_width) beam.resize(cfg.beam_width);
    for (const auto& c : beam) offer(c.word, c.product);
    if (len == cfg.max_len) break;
    std::vector<Candidate> next;
    next.reserve(beam.size() * gens.size());
    for (const auto& c : beam) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Word w = c.word;
        w.push_back(static_cast<int>(i));
        const MoebiusMap p = gens[i] * c.product;
        next.push_back({std::move(w), p, psl_distance(p, id)});
      }
    }
    beam = std::move(next);
  }

  // Affine specialization: multisets of exponents with multiplier near 1,
  // then the ordering minimizing the translation part.
  std::optional<ExactAffineTuple> affine;
  if (t.exact) affine = affine_form(*t.exact);
  if (affine) {
    const std::size_t n = affine->maps.size();
    std::vector<double> lam(n), kap(n), loglam(n);
    for (std::size_t i = 0; i < n; ++i) {
      lam[i] = affine->maps[i].lambda().get_d();
      kap[i] = affine->maps[i].kappa().get_d();
      loglam[i] = std::log(lam[i]);
    }
    std::vector<int> counts(n, 0);
    std::function<void(std::size_t, int, double)> rec = [&](std::size_t i, int used, double loga) {
      if (i == n) {
        if (used == 0) return;
        const double bound = affine_lower_bound(std::exp(loga));
        if (bound >= cfg.threshold || (best && bound >= best->distance)) return;
        Word w = sorted_word(counts);
        Word pick = w;
        double pick_k = std::abs(kappa_of(lam, kap, w));
        if (multiset_permutations(counts) <= static_cast<double>(cfg.permutation_cap)) {
          while (std::next_permutation(w.begin(), w.end())) {
            const double k = std::abs(kappa_of(lam, kap, w));
            if (k < pick_k) {
              pick_k = k;
              pick = w;
            }
          }
        } else {
          // Greedy: grow from the innermost letter, keeping |kappa| small.
          std::vector<int> left = counts;
          pick.clear();
          double k = 0.0;
          for (int step = 0; step < used; ++step) {
            int choice = -1;
            double choice_k = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
              if (left[j] == 0) continue;
              const double kj = lam[j] * k + kap[j];
              if (choice < 0 || std::abs(kj) < std::abs(choice_k)) {
                choice = static_cast<int>(j);
                choice_k = kj;
              }
            }
            --left[static_cast<std::size_t>(choice)];
            pick.push_back(choice);
            k = choice_k;
          }
        }
        offer(pick, evaluate(gens, pick));
        return;
      }
      for (int c = 0; c <= cfg.e_max && used + c <= cfg.max_len; ++c) {
        counts[i] = c;
        rec(i + 1, used + c, loga + c * loglam[i]);
      }
      counts[i] = 0;
    };
    rec(0, 0, 0.0);
  }

  SemidiscreteSearch out;
  if (best) {
    WordWitness w;
    w.word = best->word;
    w.product = best->product;
    w.distance = best->distance;
    w.kind = WitnessKind::IdentityApproach;
    out.best = w;
    if (w.distance < cfg.threshold) out.witness = w;
  }
  return out;
}

ExactAffine translation_accumulation(const ExactAffine& f, const ExactAffine& g, int n) {
  const Rational &a = f.lambda(), &b = f.kappa(), &c = g.lambda(), &d = g.kappa();
  if (a * c != 1) throw Error(ErrorCode::PreconditionFailed, "translation_accumulation needs ac = 1");
  if (n < 0) throw Error(ErrorCode::PreconditionFailed, "n must be nonnegative");
  if (c == 1) return ExactAffine(Rational(1), Rational(n * (b + d)));
  Rational cn = 1;
  for (int k = 0; k < n; ++k) cn *= c;
  return ExactAffine(Rational(1), Rational((1 - cn) * (d / (1 - c) - b / (1 - a))));
}

}  // namespace mobius
