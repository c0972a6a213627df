#include "mobius/moebius_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mobius/error.hpp"

namespace mobius {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::AmbiguousClass: return "AmbiguousClass";
    case ErrorCode::DegenerateArc: return "DegenerateArc";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::CommonFixedPoint: return "CommonFixedPoint";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
  }
  return "Unknown";
}

const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::Identity: return "Identity";
    case MapClass::Elliptic: return "Elliptic";
    case MapClass::Parabolic: return "Parabolic";
    case MapClass::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

namespace {

std::array<double, 4> canonical_sign(std::array<double, 4> m);

std::array<double, 4> normalize(std::array<double, 4> m) {
  for (double x : m) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidMatrix, "non-finite coefficient");
  }
  const double det = m[0] * m[3] - m[1] * m[2];
  if (!(det > 0.0)) throw Error(ErrorCode::InvalidMatrix, "determinant must be positive");
  const double s = 1.0 / std::sqrt(det);
  for (double& x : m) x *= s;
  return canonical_sign(m);
}

// Products of det-1 matrices are left unscaled: recomputing ad - bc for
// large entries cancels catastrophically.
std::array<double, 4> canonical_sign(std::array<double, 4> m) {
  const double scale = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2]), std::abs(m[3])});
  for (double x : m) {
    if (std::abs(x) > 1e-13 * scale) {
      if (x < 0) {
        for (double& y : m) y = -y;
      }
      break;
    }
  }
  for (double& x : m) {
    if (x == 0.0) x = 0.0;  // drop negative zero
  }
  return m;
}

// Eigenvector of the 2x2 matrix for eigenvalue l, as a boundary point.
BoundaryPoint eigen_point(const std::array<double, 4>& m, double l) {
  const double x1 = m[1], y1 = l - m[0];
  const double x2 = l - m[3], y2 = m[2];
  if (x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2) return BoundaryPoint::from_vector(x1, y1);
  return BoundaryPoint::from_vector(x2, y2);
}

}  // namespace

MoebiusMap::MoebiusMap(double a, double b, double c, double d)
    : m_(normalize({a, b, c, d})) {}

MoebiusMap MoebiusMap::affine(double lambda, double kappa) {
  return MoebiusMap(lambda, kappa, 0.0, 1.0);
}

MoebiusMap MoebiusMap::rotation(double angle) {
  const double h = 0.5 * angle;
  return MoebiusMap(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
}

MoebiusMap MoebiusMap::inverse() const {
  return MoebiusMap(Raw{}, canonical_sign({m_[3], -m_[1], -m_[2], m_[0]}));
}

BoundaryPoint MoebiusMap::apply(BoundaryPoint p) const {
  const double u = std::cos(p.theta()), v = std::sin(p.theta());
  return BoundaryPoint::from_vector(m_[0] * u + m_[1] * v, m_[2] * u + m_[3] * v);
}

std::complex<double> MoebiusMap::apply(std::complex<double> z) const {
  return (m_[0] * z + m_[1]) / (m_[2] * z + m_[3]);
}

double MoebiusMap::angular_derivative(BoundaryPoint p) const {
  const double u = std::cos(p.theta()), v = std::sin(p.theta());
  const double x = m_[0] * u + m_[1] * v, y = m_[2] * u + m_[3] * v;
  return 1.0 / (x * x + y * y);
}

double MoebiusMap::frobenius_norm() const {
  return std::sqrt(m_[0] * m_[0] + m_[1] * m_[1] + m_[2] * m_[2] + m_[3] * m_[3]);
}

double MoebiusMap::spectral_norm() const {
  const double f2 = m_[0] * m_[0] + m_[1] * m_[1] + m_[2] * m_[2] + m_[3] * m_[3];
  return 0.5 * (std::sqrt(f2 + 2.0) + std::sqrt(std::max(f2 - 2.0, 0.0)));
}

double MoebiusMap::spectral_radius() const {
  const double t = std::abs(trace());
  if (t <= 2.0) return 1.0;
  return 0.5 * (t + std::sqrt(t * t - 4.0));
}

MoebiusMap operator*(const MoebiusMap& l, const MoebiusMap& r) {
  const auto& x = l.m_;
  const auto& y = r.m_;
  return MoebiusMap(MoebiusMap::Raw{},
                    canonical_sign({x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                    x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]}));
}

MoebiusMap compose(const MoebiusMap& lhs, const MoebiusMap& rhs) { return lhs * rhs; }

MoebiusMap commutator(const MoebiusMap& f, const MoebiusMap& g) {
  return f * g * f.inverse() * g.inverse();
}

double psl_distance(const MoebiusMap& m1, const MoebiusMap& m2) {
  double plus = 0.0, minus = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double p = m1.coefficients()[i] - m2.coefficients()[i];
    const double q = m1.coefficients()[i] + m2.coefficients()[i];
    plus += p * p;
    minus += q * q;
  }
  return std::sqrt(std::min(plus, minus));
}

bool is_identity(const MoebiusMap& m, double tol) {
  const auto& c = m.coefficients();
  auto close = [tol](const std::array<double, 4>& x, double s) {
    return std::abs(x[0] - s) <= tol && std::abs(x[1]) <= tol && std::abs(x[2]) <= tol &&
           std::abs(x[3] - s) <= tol;
  };
  return close(c, 1.0) || close(c, -1.0);
}

MapClass classify_map(const MoebiusMap& m, bool strict) {
  if (is_identity(m)) return MapClass::Identity;
  const double t = std::abs(m.trace());
  const double gap = std::abs(t - 2.0);
  if (gap <= kClassTolerance) {
    if (strict && gap > 0.0) {
      throw Error(ErrorCode::AmbiguousClass, "|tr| = " + std::to_string(t) + " within tolerance of 2");
    }
    return MapClass::Parabolic;
  }
  return t < 2.0 ? MapClass::Elliptic : MapClass::Hyperbolic;
}

FixedPointData fixed_points(const MoebiusMap& m) {
  FixedPointData out;
  out.map_class = classify_map(m);
  auto c = m.coefficients();
  if (m.trace() < 0) {
    for (double& x : c) x = -x;
  }
  const double t = c[0] + c[3];
  switch (out.map_class) {
    case MapClass::Identity:
      out.all_fixed = true;
      break;
    case MapClass::Parabolic:
      out.attracting = eigen_point(c, 1.0);
      break;
    case MapClass::Hyperbolic: {
      const double s = std::sqrt(t * t - 4.0);
      const double big = 0.5 * (t + s);
      const double small = 1.0 / big;
      out.attracting = eigen_point(c, big);
      out.repelling = eigen_point(c, small);
      out.multiplier = big * big;
      break;
    }
    case MapClass::Elliptic: {
      const double s = std::sqrt(std::max(4.0 - t * t, 0.0));
      out.interior = std::complex<double>((c[0] - c[3]) / (2.0 * c[2]), s / (2.0 * std::abs(c[2])));
      break;
    }
  }
  return out;
}

std::vector<BoundaryPoint> boundary_fixed_points(const MoebiusMap& m) {
  const FixedPointData fp = fixed_points(m);
  std::vector<BoundaryPoint> out;
  if (fp.attracting) out.push_back(*fp.attracting);
  if (fp.repelling) out.push_back(*fp.repelling);
  return out;
}

std::string to_string(const MoebiusMap& m) {
  std::ostringstream os;
  os.precision(17);
  os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
  return os.str();
}

}  // namespace mobius
