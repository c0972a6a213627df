#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobius/circle_point.hpp"

namespace mobius {

inline constexpr double kClassTolerance = 1e-12;

enum class MapClass { Identity, Elliptic, Parabolic, Hyperbolic };

const char* to_string(MapClass c);

/// An element of PSL(2,R): z -> (az+b)/(cz+d) with ad-bc = 1.
///
/// Representatives are kept at determinant one with the first nonzero
/// coefficient (in the order a, b, c, d) positive, so that equal elements have
/// equal coefficients up to rounding.
class MoebiusMap {
 public:
  /// Identity.
  MoebiusMap() = default;

  /// Normalizes an arbitrary real matrix with positive determinant.
  /// Throws Error(InvalidMatrix) when det <= 0 or an entry is not finite.
  MoebiusMap(double a, double b, double c, double d);

  static MoebiusMap identity() { return {}; }
  /// z -> lambda z + kappa, lambda > 0.
  static MoebiusMap affine(double lambda, double kappa);
  /// Elliptic rotation by `angle` about i (matrix [[cos, -sin], [sin, cos]] of angle/2).
  static MoebiusMap rotation(double angle);

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  const std::array<double, 4>& coefficients() const { return m_; }

  double trace() const { return m_[0] + m_[3]; }
  MoebiusMap inverse() const;

  /// Projective action on the boundary circle.
  BoundaryPoint apply(BoundaryPoint p) const;
  /// Action on the closed upper half-plane (finite points only).
  std::complex<double> apply(std::complex<double> z) const;
  /// Derivative of the boundary action at p, measured in the angle chart.
  double angular_derivative(BoundaryPoint p) const;

  /// Frobenius norm of the det-1 representative.
  double frobenius_norm() const;
  /// Largest singular value.
  double spectral_norm() const;
  /// Largest eigenvalue modulus (1 for non-hyperbolic maps).
  double spectral_radius() const;

  friend MoebiusMap operator*(const MoebiusMap& lhs, const MoebiusMap& rhs);

 private:
  struct Raw {};
  MoebiusMap(Raw, std::array<double, 4> m) : m_(m) {}
  std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

/// Composition lhs o rhs (rhs applied first); renormalized.
MoebiusMap compose(const MoebiusMap& lhs, const MoebiusMap& rhs);
/// f o g o f^-1 o g^-1.
MoebiusMap commutator(const MoebiusMap& f, const MoebiusMap& g);
/// Sign-minimized Frobenius distance between det-1 representatives.
double psl_distance(const MoebiusMap& m1, const MoebiusMap& m2);
bool is_identity(const MoebiusMap& m, double tol = kClassTolerance);

/// Identity iff within 1e-12 of the identity; otherwise by |tr| against 2.
/// In strict mode a non-identity map with 0 < ||tr|-2| <= 1e-12 throws
/// Error(AmbiguousClass) instead of being reported as parabolic.
MapClass classify_map(const MoebiusMap& m, bool strict = false);

struct FixedPointData {
  MapClass map_class = MapClass::Identity;
  bool all_fixed = false;                        // identity
  std::optional<BoundaryPoint> attracting;       // hyperbolic, or the parabolic point
  std::optional<BoundaryPoint> repelling;        // hyperbolic only
  std::optional<std::complex<double>> interior;  // elliptic only
  double multiplier = 1.0;                       // derivative at the repelling point
};

FixedPointData fixed_points(const MoebiusMap& m);

/// Boundary fixed points (0, 1 or 2 of them; none for identity).
std::vector<BoundaryPoint> boundary_fixed_points(const MoebiusMap& m);

std::string to_string(const MoebiusMap& m);

using MapSpan = std::span<const MoebiusMap>;

}  // namespace mobius
