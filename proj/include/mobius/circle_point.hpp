#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace mobius {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Wraps an angle into [0, pi).
inline double wrap_angle(double t) {
  t = std::fmod(t, kPi);
  if (t < 0) t += kPi;
  if (t >= kPi) t = 0.0;
  return t;
}

/// A point of RP^1 stored as the angle theta in [0, pi) of the line through
/// (cos theta, sin theta). The extended real is cot(theta): theta = 0 is
/// infinity and theta = pi/2 is 0. Increasing theta means decreasing real.
class BoundaryPoint {
 public:
  BoundaryPoint() = default;
  explicit BoundaryPoint(double theta) : theta_(wrap_angle(theta)) {}

  /// Accepts +-inf for the point at infinity.
  static BoundaryPoint from_real(double x) {
    if (std::isinf(x)) return BoundaryPoint(0.0);
    return BoundaryPoint(std::atan2(1.0, x));
  }
  /// Line spanned by the vector (x, y), i.e. the point x/y.
  static BoundaryPoint from_vector(double x, double y) {
    return BoundaryPoint(std::atan2(y, x));
  }
  static BoundaryPoint infinity() { return BoundaryPoint(0.0); }

  double theta() const { return theta_; }
  bool is_infinity(double tol = 0.0) const {
    return theta_ <= tol || kPi - theta_ <= tol;
  }
  /// +inf at theta == 0.
  double to_real() const {
    if (theta_ == 0.0) return kInf;
    return std::cos(theta_) / std::sin(theta_);
  }

 private:
  double theta_ = 0.0;
};

/// Positive-direction angular offset from `from` to `to`, in [0, pi).
inline double forward_offset(BoundaryPoint from, BoundaryPoint to) {
  return wrap_angle(to.theta() - from.theta());
}

/// Geodesic distance on the circle of circumference pi.
inline double angular_distance(BoundaryPoint p, BoundaryPoint q) {
  double d = forward_offset(p, q);
  return std::min(d, kPi - d);
}

}  // namespace mobius
