#pragma once

#include <string>
#include <vector>

#include "mobius/circle_point.hpp"
#include "mobius/moebius_map.hpp"

namespace mobius {

inline constexpr double kDefaultCertMargin = 1e-7;

/// Open arc of RP^1 swept from `start` in the direction of increasing theta
/// (decreasing real) for `length` radians. length == pi is the whole circle.
/// A point-like arc has length 0 and stands for a single closed point.
struct Arc {
  double start = 0.0;
  double length = 0.0;
  bool point_like = false;

  /// Arc swept from `from` to `to` in increasing theta.
  static Arc between(BoundaryPoint from, BoundaryPoint to);
  /// Real interval from x increasing to y, through infinity when x > y.
  /// real_interval(1, 4) is (1,4); real_interval(1, -1) is (1, inf] u [-inf, -1).
  static Arc real_interval(double x, double y);
  static Arc point(BoundaryPoint p);
  static Arc full() { return Arc{0.0, kPi, false}; }

  bool is_full() const { return length >= kPi; }
  double end() const { return start + length; }
  BoundaryPoint start_point() const { return BoundaryPoint(start); }
  BoundaryPoint end_point() const { return BoundaryPoint(start + length); }
  BoundaryPoint midpoint() const { return BoundaryPoint(start + 0.5 * length); }
  /// Lower/upper ends as extended reals (the interval is lower -> upper
  /// increasing, through infinity when lower > upper).
  double lower_real() const { return end_point().to_real(); }
  double upper_real() const { return start_point().to_real(); }

  /// p lies in the open arc shrunk by `margin` on each side.
  bool contains(BoundaryPoint p, double margin = 0.0) const;
  /// p lies in the closed arc fattened by `margin`.
  bool closure_contains(BoundaryPoint p, double margin = 0.0) const;
};

std::string to_string(const Arc& a);

/// Finite union of arcs with pairwise disjoint closures, sorted by start.
struct ArcUnion {
  std::vector<Arc> arcs;

  bool empty() const { return arcs.empty(); }
  bool is_full() const { return arcs.size() == 1 && arcs[0].is_full(); }
  bool contains(BoundaryPoint p, double margin = 0.0) const;
  bool closure_contains(BoundaryPoint p, double margin = 0.0) const;
  /// Angular distance from p to the closure (0 inside).
  double distance_to(BoundaryPoint p) const;
  double total_length() const;
};

/// Union of arbitrary arcs: arcs whose closures meet are merged.
ArcUnion merge_arcs(std::vector<Arc> arcs);
ArcUnion unite(const ArcUnion& x, const ArcUnion& y);
/// Every arc widened by eta on both sides, then merged.
ArcUnion fatten(const ArcUnion& u, double eta);
/// Open components of the complement of the closure.
std::vector<Arc> complement(const ArcUnion& u);

/// Image of an open arc. Throws Error(DegenerateArc) when a non-point arc is
/// shorter than 1e-14.
Arc arc_image(const MoebiusMap& m, const Arc& a);
ArcUnion arc_image(const MoebiusMap& m, const ArcUnion& u);
/// As arc_image, without the length check; for following arcs through long
/// contracting words.
Arc track_arc(const MoebiusMap& m, const Arc& a);

/// Closure of `inner`, fattened by margin, lies in the open `outer`.
bool strictly_inside(const Arc& inner, const Arc& outer, double margin = 0.0);
bool strictly_inside(const ArcUnion& inner, const ArcUnion& outer, double margin = 0.0);

/// Cyclic clustering: neighbours closer than `gap` share a closed hull.
/// No gap larger than `gap` yields the full circle. Throws Error(EmptyInput).
ArcUnion merge_points_to_arcs(std::vector<BoundaryPoint> points, double gap);

}  // namespace mobius
