#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mobius/circle.hpp"
#include "mobius/exact.hpp"
#include "mobius/semigroup.hpp"

namespace mobius {

inline constexpr double kDefaultHullGap = 0.02;
inline constexpr int kDefaultLimitDepth = 12;

enum class LimitMethod { FixedPoints, OrbitClosure };
const char* to_string(LimitMethod m);

struct LimitSetApprox {
  bool forward = true;
  LimitMethod method = LimitMethod::FixedPoints;
  int depth = 0;
  double gap = kDefaultHullGap;
  /// Forward: attracting fixed points of the words. Backward: repelling fixed
  /// points, with words in the original generators. OrbitClosure points carry
  /// the word whose image of i was projected.
  std::vector<WordPoint> points;
  ArcUnion hull;  // empty when there are no points
};

/// Fixed points of hyperbolic words when any exist up to `depth`; otherwise
/// the orbit of i, keeping images within 1e-3 of the disc boundary.
LimitSetApprox forward_limit_set(MapSpan gens, int depth = kDefaultLimitDepth, double gap = kDefaultHullGap,
                                 std::uint64_t budget = kDefaultNodeBudget);
LimitSetApprox backward_limit_set(MapSpan gens, int depth = kDefaultLimitDepth, double gap = kDefaultHullGap,
                                  std::uint64_t budget = kDefaultNodeBudget);

/// Boundary point of the disc model w = (z - i)/(z + i) in direction arg w.
BoundaryPoint disc_direction(std::complex<double> w);

/// [lower, inf] for f = az, g = cz + d with 0 < c < 1 < a and d/(1-c) > 0.
struct AffineInterval {
  Rational lower;
};
AffineInterval affine_limit_interval(const ExactAffine& f, const ExactAffine& g);

/// With f(x) = x, g(y) = y and both maps sending (x, y) strictly into itself,
/// the forward limit set is all of [x, y] iff g(x) <= f(y). The order is read
/// in the angle chart running from x towards y. Throws PreconditionFailed.
bool ls_inter_full_interval(const MoebiusMap& f, const MoebiusMap& g, double x, double y);
bool ls_inter_full_interval(const RationalMatrix& f, const RationalMatrix& g, const Rational& x,
                            const Rational& y);

struct CoreGap {
  Arc gap;          // complement component of the hull
  WordPoint witness;  // opposite limit point inside it
};

struct CoreSet {
  ArcUnion forward, backward;
  std::vector<CoreGap> forward_removed, backward_removed;
  bool degenerate = false;  // a hull was the whole circle
};

/// Hull minus the complement components meeting the opposite limit set.
CoreSet compute_cores(const LimitSetApprox& fwd, const LimitSetApprox& bwd);

enum class ElementaryKind { CommonBoundaryFixed, CommonInteriorFixed, InvariantPair, NonElementary };
const char* to_string(ElementaryKind k);

struct ElementaryStatus {
  ElementaryKind kind = ElementaryKind::NonElementary;
  std::optional<BoundaryPoint> point;            // CommonBoundaryFixed, InvariantPair first
  std::optional<BoundaryPoint> second;           // InvariantPair
  std::optional<std::complex<double>> interior;  // CommonInteriorFixed
  bool elementary() const { return kind != ElementaryKind::NonElementary; }
};

ElementaryStatus elementary_check(MapSpan gens);

struct NotSemidiscreteConclusion {
  WordPoint backward_point;   // repelling fixed point inside the forward hull
  Word forward_witness;       // attracting point nearest to it
  Arc forward_arc;            // hull arc containing it
  std::vector<int> subtuple;  // generators whose forward hull was used (0-based)
  bool non_elementary = false;
  std::vector<std::string> assumptions;
};

/// Fires when a backward point lies `gap` deep inside a forward hull arc.
std::optional<NotSemidiscreteConclusion> nonsd_inference(MapSpan gens, const LimitSetApprox& fwd,
                                                         const LimitSetApprox& bwd,
                                                         bool inverse_free_up_to_depth);

/// Tries forward hulls of sub-tuples (by size, then lexicographically)
/// against the backward points of the whole tuple.
std::optional<NotSemidiscreteConclusion> nonsd_search(MapSpan gens, int depth, double gap,
                                                      bool inverse_free_up_to_depth);

}  // namespace mobius
