#include "mobius/circle.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "mobius/error.hpp"

namespace mobius {

Arc Arc::between(BoundaryPoint from, BoundaryPoint to) {
  return Arc{from.theta(), forward_offset(from, to), false};
}

Arc Arc::real_interval(double x, double y) {
  return between(BoundaryPoint::from_real(y), BoundaryPoint::from_real(x));
}

Arc Arc::point(BoundaryPoint p) { return Arc{p.theta(), 0.0, true}; }

bool Arc::contains(BoundaryPoint p, double margin) const {
  if (is_full()) return true;
  const double off = forward_offset(start_point(), p);
  return off > margin && off < length - margin;
}

bool Arc::closure_contains(BoundaryPoint p, double margin) const {
  if (is_full()) return true;
  const double off = wrap_angle(p.theta() - start + margin);
  return off <= length + 2 * margin;
}

std::string to_string(const Arc& a) {
  std::ostringstream out;
  if (a.is_full()) return "full circle";
  if (a.point_like) {
    out << "{" << a.start_point().to_real() << "}";
  } else {
    out << "(" << a.lower_real() << ", " << a.upper_real() << ")";
  }
  return out.str();
}

bool ArcUnion::contains(BoundaryPoint p, double margin) const {
  return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.contains(p, margin); });
}

bool ArcUnion::closure_contains(BoundaryPoint p, double margin) const {
  return std::any_of(arcs.begin(), arcs.end(),
                     [&](const Arc& a) { return a.closure_contains(p, margin); });
}

double ArcUnion::distance_to(BoundaryPoint p) const {
  double best = kPi;
  for (const Arc& a : arcs) {
    if (a.closure_contains(p)) return 0.0;
    best = std::min({best, angular_distance(p, a.start_point()), angular_distance(p, a.end_point())});
  }
  return best;
}

double ArcUnion::total_length() const {
  double s = 0.0;
  for (const Arc& a : arcs) s += a.length;
  return std::min(s, kPi);
}

ArcUnion merge_arcs(std::vector<Arc> arcs) {
  ArcUnion out;
  if (arcs.empty()) return out;
  for (const Arc& a : arcs) {
    if (a.is_full()) {
      out.arcs.push_back(Arc::full());
      return out;
    }
  }
  for (Arc& a : arcs) a.start = wrap_angle(a.start);
  std::sort(arcs.begin(), arcs.end(), [](const Arc& l, const Arc& r) { return l.start < r.start; });
  // Linear sweep on the unrolled line, then close the cycle.
  struct Span {
    double lo, hi;
    bool point_like;
  };
  std::vector<Span> spans;
  for (const Arc& a : arcs) {
    if (!spans.empty() && a.start <= spans.back().hi) {
      Span& s = spans.back();
      s.hi = std::max(s.hi, a.end());
      s.point_like = s.point_like && a.point_like && a.end() <= s.lo;
    } else {
      spans.push_back({a.start, a.end(), a.point_like});
    }
  }
  while (spans.size() > 1 && spans.back().hi - kPi >= spans.front().lo) {
    Span& last = spans.back();
    last.hi = std::max(last.hi, spans.front().hi + kPi);
    last.point_like = false;
    spans.erase(spans.begin());
  }
  if (spans.size() == 1 && spans[0].hi - spans[0].lo >= kPi) {
    out.arcs.push_back(Arc::full());
    return out;
  }
  for (const Span& s : spans) {
    const double len = s.hi - s.lo;
    out.arcs.push_back(Arc{wrap_angle(s.lo), len, s.point_like && len == 0.0});
  }
  std::sort(out.arcs.begin(), out.arcs.end(),
            [](const Arc& l, const Arc& r) { return l.start < r.start; });
  return out;
}

ArcUnion unite(const ArcUnion& x, const ArcUnion& y) {
  std::vector<Arc> all = x.arcs;
  all.insert(all.end(), y.arcs.begin(), y.arcs.end());
  return merge_arcs(std::move(all));
}

ArcUnion fatten(const ArcUnion& u, double eta) {
  std::vector<Arc> all;
  for (const Arc& a : u.arcs) all.push_back(Arc{a.start - eta, a.length + 2 * eta, false});
  return merge_arcs(std::move(all));
}

std::vector<Arc> complement(const ArcUnion& u) {
  std::vector<Arc> gaps;
  if (u.empty()) {
    gaps.push_back(Arc::full());
    return gaps;
  }
  if (u.is_full()) return gaps;
  const std::size_t n = u.arcs.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Arc& cur = u.arcs[k];
    const Arc& next = u.arcs[(k + 1) % n];
    const double len = wrap_angle(next.start - cur.end());
    if (n == 1) {
      gaps.push_back(Arc{wrap_angle(cur.end()), kPi - cur.length, false});
    } else if (len > 0.0) {
      gaps.push_back(Arc{wrap_angle(cur.end()), len, false});
    }
  }
  return gaps;
}

Arc arc_image(const MoebiusMap& m, const Arc& a) {
  if (!a.point_like && !a.is_full() && a.length < 1e-14) {
    throw Error(ErrorCode::DegenerateArc, "arc length below 1e-14");
  }
  return track_arc(m, a);
}

Arc track_arc(const MoebiusMap& m, const Arc& a) {
  if (a.is_full()) return Arc::full();
  if (a.point_like) return Arc::point(m.apply(a.start_point()));
  const std::array<BoundaryPoint, 3> img{m.apply(a.start_point()), m.apply(a.midpoint()),
                                         m.apply(a.end_point())};
  const double len = forward_offset(img[0], img[2]);
  if (forward_offset(img[0], img[1]) < len) return Arc{img[0].theta(), len, false};
  // Rounding reversed a nearly degenerate image; take the tightest arc
  // holding the three sample images.
  Arc best{img[0].theta(), kPi, false};
  for (const BoundaryPoint& s : img) {
    double spread = 0.0;
    for (const BoundaryPoint& q : img) spread = std::max(spread, forward_offset(s, q));
    if (spread < best.length) best = Arc{s.theta(), spread, false};
  }
  return best;
}

ArcUnion arc_image(const MoebiusMap& m, const ArcUnion& u) {
  std::vector<Arc> out;
  out.reserve(u.arcs.size());
  for (const Arc& a : u.arcs) out.push_back(arc_image(m, a));
  return merge_arcs(std::move(out));
}

bool strictly_inside(const Arc& inner, const Arc& outer, double margin) {
  if (outer.is_full()) return true;
  if (inner.is_full()) return false;
  const double off = wrap_angle(inner.start - margin - outer.start);
  return off > 0.0 && off + inner.length + 2 * margin < outer.length;
}

bool strictly_inside(const ArcUnion& inner, const ArcUnion& outer, double margin) {
  for (const Arc& a : inner.arcs) {
    const bool ok = std::any_of(outer.arcs.begin(), outer.arcs.end(),
                                [&](const Arc& o) { return strictly_inside(a, o, margin); });
    if (!ok) return false;
  }
  return true;
}

ArcUnion merge_points_to_arcs(std::vector<BoundaryPoint> points, double gap) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points to merge");
  std::sort(points.begin(), points.end(),
            [](BoundaryPoint l, BoundaryPoint r) { return l.theta() < r.theta(); });
  const std::size_t n = points.size();
  ArcUnion out;
  if (n == 1) {
    out.arcs.push_back(Arc::point(points[0]));
    return out;
  }
  // gaps[k] runs from points[k] to points[k+1] (cyclically).
  std::vector<double> gaps(n);
  for (std::size_t k = 0; k + 1 < n; ++k) gaps[k] = points[k + 1].theta() - points[k].theta();
  gaps[n - 1] = points[0].theta() + kPi - points[n - 1].theta();
  std::size_t first_split = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (gaps[k] > gap) {
      first_split = k;
      break;
    }
  }
  if (first_split == n) {
    out.arcs.push_back(Arc::full());
    return out;
  }
  std::vector<Arc> arcs;
  std::size_t k = (first_split + 1) % n;
  for (std::size_t visited = 0; visited < n;) {
    const std::size_t begin = k;
    double len = 0.0;
    ++visited;
    while (gaps[k] <= gap) {
      len += gaps[k];
      k = (k + 1) % n;
      ++visited;
    }
    arcs.push_back(Arc{points[begin].theta(), len, len == 0.0});
    k = (k + 1) % n;
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& l, const Arc& r) { return l.start < r.start; });
  out.arcs = std::move(arcs);
  return out;
}

}  // namespace mobius
