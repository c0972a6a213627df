#include "mobius/exact.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "mobius/error.hpp"

namespace mobius {

std::optional<Rational> parse_rational(const std::string& text) {
  static const std::regex fraction(R"(^([+-]?\d+)(?:/(\d+))?$)");
  static const std::regex decimal(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    BigInt num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str(), 10);
    BigInt den = m[2].matched ? BigInt(m[2].str(), 10) : BigInt(1);
    if (den == 0) return std::nullopt;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(text, m, decimal)) {
    const std::string ip = m[2].str(), fp = m[3].str();
    if (ip.empty() && fp.empty()) return std::nullopt;
    BigInt digits(ip + fp, 10);
    long exp10 = -static_cast<long>(fp.size());
    if (m[4].matched) exp10 += std::stol(m[4].str());
    if (std::labs(exp10) > 4000) return std::nullopt;
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational q = exp10 >= 0 ? Rational(digits * p10) : Rational(digits, p10);
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  return std::nullopt;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

RationalMatrix RationalMatrix::operator*(const RationalMatrix& r) const {
  return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

std::optional<Rational> RationalMatrix::apply(const Rational& z) const {
  const Rational den = c * z + d;
  if (den == 0) return std::nullopt;
  return Rational((a * z + b) / den);
}

MoebiusMap RationalMatrix::to_map() const {
  const Rational dt = det();
  if (dt <= 0) throw Error(ErrorCode::InvalidMatrix, "determinant must be positive");
  return MoebiusMap(a.get_d(), b.get_d(), c.get_d(), d.get_d());
}

Rational squared_trace(const RationalMatrix& m) {
  const Rational t = m.a + m.d;
  return t * t / m.det();
}

Rational commutator_abs_trace(const RationalMatrix& f, const RationalMatrix& g) {
  const RationalMatrix p = f * g * f.adjugate() * g.adjugate();
  Rational t = (p.a + p.d) / (f.det() * g.det());
  return abs(t);
}

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<unsigned long> out;
    for (unsigned long n = 2; n < 1000; ++n) {
      bool prime = true;
      for (unsigned long p : out) {
        if (p * p > n) break;
        if (n % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return primes;
}

void trial_divide(BigInt& n, int sign, std::map<BigInt, int>& exps) {
  for (unsigned long p : small_primes()) {
    if (n == 1) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      exps[BigInt(p)] += sign;
    }
  }
}

// Exponent of each base in n; n must factor completely over the base.
void factor_over(BigInt n, int sign, const std::vector<BigInt>& base, std::vector<int>& out) {
  for (std::size_t k = 0; k < base.size() && n != 1; ++k) {
    while (mpz_divisible_p(n.get_mpz_t(), base[k].get_mpz_t())) {
      n /= base[k];
      out[k] += sign;
    }
  }
  if (n != 1) throw Error(ErrorCode::PreconditionFailed, "base does not cover value");
}

}  // namespace

Rational FactoredRational::value() const {
  Rational v = residual;
  for (const auto& [base, e] : exponents) {
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    v = e >= 0 ? Rational(v * p) : Rational(v / p);
  }
  v.canonicalize();
  return v;
}

FactoredRational FactoredRational::operator*(const FactoredRational& r) const {
  FactoredRational out = *this;
  for (const auto& [base, e] : r.exponents) {
    int& slot = out.exponents[base];
    slot += e;
    if (slot == 0) out.exponents.erase(base);
  }
  out.residual *= r.residual;
  out.residual.canonicalize();
  return out;
}

FactoredRational factor_rational(const Rational& q) {
  if (q <= 0) throw Error(ErrorCode::PreconditionFailed, "factor_rational needs q > 0");
  FactoredRational out;
  BigInt num = q.get_num(), den = q.get_den();
  trial_divide(num, +1, out.exponents);
  trial_divide(den, -1, out.exponents);
  std::erase_if(out.exponents, [](const auto& kv) { return kv.second == 0; });
  out.residual = Rational(num, den);
  out.residual.canonicalize();
  return out;
}

ExactAffine::ExactAffine(Rational lambda, Rational kappa)
    : lambda_(std::move(lambda)), kappa_(std::move(kappa)) {
  lambda_.canonicalize();
  kappa_.canonicalize();
  if (lambda_ <= 0) throw Error(ErrorCode::PreconditionFailed, "affine multiplier must be positive");
  factors_ = factor_rational(lambda_);
}

ExactAffine ExactAffine::compose(const ExactAffine& rhs) const {
  ExactAffine out;
  out.lambda_ = lambda_ * rhs.lambda_;
  out.kappa_ = lambda_ * rhs.kappa_ + kappa_;
  out.lambda_.canonicalize();
  out.kappa_.canonicalize();
  out.factors_ = factors_ * rhs.factors_;
  return out;
}

MoebiusMap ExactAffine::to_map() const { return MoebiusMap::affine(lambda_.get_d(), kappa_.get_d()); }

ExactAffineTuple make_affine_tuple(std::vector<ExactAffine> maps) {
  // Start from the trial-division primes plus every leftover integer, then
  // refine until pairwise coprime.
  std::set<BigInt> pool;
  for (const auto& m : maps) {
    for (const auto& [base, e] : m.lambda_factors().exponents) pool.insert(base);
    const Rational& r = m.lambda_factors().residual;
    if (r.get_num() > 1) pool.insert(r.get_num());
    if (r.get_den() > 1) pool.insert(r.get_den());
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto i = pool.begin(); i != pool.end() && !changed; ++i) {
      for (auto j = std::next(i); j != pool.end(); ++j) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), i->get_mpz_t(), j->get_mpz_t());
        if (g == 1) continue;
        BigInt x = *i / g, y = *j / g;
        pool.erase(*j);
        pool.erase(*i);
        for (const BigInt& v : {g, x, y}) {
          if (v > 1) pool.insert(v);
        }
        changed = true;
        break;
      }
    }
  }
  ExactAffineTuple out;
  out.prime_support.assign(pool.begin(), pool.end());
  for (const auto& m : maps) {
    std::vector<int> e(out.prime_support.size(), 0);
    factor_over(m.lambda().get_num(), +1, out.prime_support, e);
    factor_over(m.lambda().get_den(), -1, out.prime_support, e);
    out.exponents.push_back(std::move(e));
  }
  out.maps = std::move(maps);
  return out;
}

namespace {

bool is_scalar(const RationalMatrix& m) { return m.b == 0 && m.c == 0 && m.a == m.d; }

bool fixes(const RationalMatrix& m, const std::optional<Rational>& p) {
  if (!p) return m.c == 0;
  const Rational& z = *p;
  return m.c * z * z + (m.d - m.a) * z - m.b == 0;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace

std::optional<ExactAffineTuple> affine_form(const std::vector<RationalMatrix>& tuple) {
  if (tuple.empty()) return std::nullopt;
  for (const auto& m : tuple) {
    if (m.det() <= 0) return std::nullopt;
  }
  // Candidate points (nullopt = infinity) from the first non-scalar generator.
  std::vector<std::optional<Rational>> candidates;
  auto src = std::find_if(tuple.begin(), tuple.end(), [](const auto& m) { return !is_scalar(m); });
  if (src == tuple.end()) {
    candidates.push_back(std::nullopt);
  } else if (src->c == 0) {
    candidates.push_back(std::nullopt);
    if (src->a != src->d) candidates.push_back(Rational(src->b / (src->d - src->a)));
  } else {
    const Rational disc = (src->d - src->a) * (src->d - src->a) + 4 * src->b * src->c;
    if (auto root = rational_sqrt(disc)) {
      for (const Rational& s : {*root, Rational(-*root)}) {
        candidates.push_back(Rational((src->a - src->d + s) / (2 * src->c)));
      }
    }
  }
  for (const auto& p : candidates) {
    if (!std::all_of(tuple.begin(), tuple.end(), [&](const auto& m) { return fixes(m, p); })) continue;
    RationalMatrix conj;  // identity
    if (p) conj = RationalMatrix{0, 1, -1, *p};  // z -> 1/(p - z), sends p to infinity
    std::vector<ExactAffine> maps;
    for (const auto& m : tuple) {
      const RationalMatrix c = conj * m * conj.adjugate();
      maps.emplace_back(Rational(c.a / c.d), Rational(c.b / c.d));
    }
    ExactAffineTuple out = make_affine_tuple(std::move(maps));
    out.conjugator = conj;
    return out;
  }
  return std::nullopt;
}

}  // namespace mobius
