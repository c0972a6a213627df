#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "mobius/moebius_map.hpp"

namespace mobius::test {

/// Plain 2x2 arithmetic; deliberately independent of MoebiusMap.
using Mat = std::array<double, 4>;

inline Mat mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

inline Mat normalized(Mat m) {
  const double s = std::sqrt(m[0] * m[3] - m[1] * m[2]);
  for (double& v : m) v /= s;
  return m;
}

inline Mat mat(const MoebiusMap& m) { return {m.a(), m.b(), m.c(), m.d()}; }

/// Sign-minimized Frobenius distance, computed from scratch.
inline double frob_psl(const Mat& x, const Mat& y) {
  double p = 0, q = 0;
  for (int k = 0; k < 4; ++k) {
    p += (x[k] - y[k]) * (x[k] - y[k]);
    q += (x[k] + y[k]) * (x[k] + y[k]);
  }
  return std::sqrt(std::min(p, q));
}

/// Real Moebius action with the point at infinity handled by hand.
inline double act(const Mat& m, double x) {
  if (std::isinf(x)) return m[2] == 0 ? INFINITY : m[0] / m[2];
  const double den = m[2] * x + m[3];
  if (den == 0) return INFINITY;
  return (m[0] * x + m[1]) / den;
}

inline MoebiusMap random_map(std::mt19937_64& rng, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const double det = a * d - b * c;
    if (det > 0.05) return MoebiusMap(a, b, c, d);
    if (det < -0.05) return MoebiusMap(b, a, d, c);
  }
}

inline MoebiusMap random_hyperbolic(std::mt19937_64& rng) {
  for (;;) {
    MoebiusMap m = random_map(rng);
    if (std::abs(m.trace()) > 2.2) return m;
  }
}

/// Hyperbolic map attracting to alpha, repelling from beta, eigenvalue ratio s^2.
inline MoebiusMap hyperbolic_with(double alpha, double beta, double s) {
  const Mat p{alpha, beta, 1, 1};
  const double det = alpha - beta;
  const Mat pinv{1 / det, -beta / det, -1 / det, alpha / det};
  const Mat m = mul(mul(p, Mat{s, 0, 0, 1 / s}), pinv);
  return MoebiusMap(m[0], m[1], m[2], m[3]);
}

/// Pairs with attractors near 1 and repellers near -1: uniformly hyperbolic.
inline std::vector<MoebiusMap> random_uh_tuple(std::mt19937_64& rng, int n = 2) {
  std::uniform_real_distribution<double> att(0.5, 1.5), rep(-1.5, -0.5), s(1.8, 4.0);
  std::vector<MoebiusMap> out;
  for (int i = 0; i < n; ++i) out.push_back(hyperbolic_with(att(rng), rep(rng), s(rng)));
  return out;
}

inline MoebiusMap conjugate(const MoebiusMap& g, const MoebiusMap& m) { return g * m * g.inverse(); }

}  // namespace mobius::test
