#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobius/moebius_map.hpp"

namespace mobius {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "3", "-4", "1/3", "0.25", "1e-3", "2.5E2" exactly.
std::optional<Rational> parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Unnormalized rational matrix [[a, b], [c, d]] with positive determinant.
struct RationalMatrix {
  Rational a{1}, b{0}, c{0}, d{1};

  Rational det() const { return a * d - b * c; }
  RationalMatrix operator*(const RationalMatrix& r) const;
  /// Adjugate; equals the inverse up to the positive scalar det.
  RationalMatrix adjugate() const { return {d, -b, -c, a}; }
  /// Image of a finite rational point; nullopt when it lands on infinity.
  std::optional<Rational> apply(const Rational& z) const;
  MoebiusMap to_map() const;
};

/// trace^2 / det, the conjugation invariant |tr|^2 of the normalized map.
Rational squared_trace(const RationalMatrix& m);
/// |tr| of the normalized commutator [f,g]; rational because
/// det(f g adj(f) adj(g)) = (det f det g)^2.
Rational commutator_abs_trace(const RationalMatrix& f, const RationalMatrix& g);

/// A positive rational as prod base^exponent. Bases are pairwise coprime
/// integers > 1 (primes whenever factorization by trial division finishes).
struct FactoredRational {
  std::map<BigInt, int> exponents;
  Rational residual{1};

  Rational value() const;
  FactoredRational operator*(const FactoredRational& r) const;
};

FactoredRational factor_rational(const Rational& q);

/// z -> lambda z + kappa with lambda > 0, held exactly.
class ExactAffine {
 public:
  ExactAffine() = default;
  /// Throws Error(PreconditionFailed) unless lambda > 0.
  ExactAffine(Rational lambda, Rational kappa);

  const Rational& lambda() const { return lambda_; }
  const Rational& kappa() const { return kappa_; }
  const FactoredRational& lambda_factors() const { return factors_; }

  /// this o rhs
  ExactAffine compose(const ExactAffine& rhs) const;
  Rational apply(const Rational& z) const { return lambda_ * z + kappa_; }
  bool is_identity() const { return lambda_ == 1 && kappa_ == 0; }
  MoebiusMap to_map() const;
  RationalMatrix to_matrix() const { return {lambda_, kappa_, 0, 1}; }

  friend bool operator==(const ExactAffine& l, const ExactAffine& r) {
    return l.lambda_ == r.lambda_ && l.kappa_ == r.kappa_;
  }

 private:
  Rational lambda_{1};
  Rational kappa_{0};
  FactoredRational factors_{};
};

/// Affine tuple with its lambda exponent vectors over a shared coprime base.
struct ExactAffineTuple {
  std::vector<ExactAffine> maps;
  std::vector<BigInt> prime_support;       // sorted bases
  std::vector<std::vector<int>> exponents;  // exponents[i][k] for maps[i], base k
  /// Conjugator c with maps[i] = c o original[i] o c^-1 (identity when the
  /// input was already affine).
  RationalMatrix conjugator;
};

/// Refines the lambda factorizations over a common pairwise-coprime base.
ExactAffineTuple make_affine_tuple(std::vector<ExactAffine> maps);

/// Detects an exact rational common boundary fixed point of the tuple and
/// conjugates it to infinity. nullopt when none exists (or none is rational).
std::optional<ExactAffineTuple> affine_form(const std::vector<RationalMatrix>& tuple);

}  // namespace mobius
