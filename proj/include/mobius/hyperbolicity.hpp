#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mobius/circle.hpp"
#include "mobius/exact.hpp"
#include "mobius/semigroup.hpp"

namespace mobius {

struct MulticoneCertificate {
  ArcUnion multicone;
  double margin = kDefaultCertMargin;
  std::vector<ArcUnion> per_generator_images;
  int word_depth_used = 0;
  double radius = 0.0;  // seed ball radius that converged
  int iterations = 0;
};

enum class MulticoneFailureKind { NonHyperbolicGenerator, LimitSetsTouch, Budget };
const char* to_string(MulticoneFailureKind k);

struct MulticoneFailure {
  MulticoneFailureKind kind = MulticoneFailureKind::Budget;
  std::string detail;
  int generator = -1;                  // NonHyperbolicGenerator
  std::optional<BoundaryPoint> point;  // LimitSetsTouch: the attracting point
  Word attracting_word, repelling_word;
  double separation = 0.0;
};

struct MulticoneConfig {
  int seed_depth = 6;
  int radius_steps = 12;
  int max_iter = 200;
  double margin = kDefaultCertMargin;
  std::size_t max_components = 64;
};

struct MulticoneResult {
  std::optional<MulticoneCertificate> certificate;
  std::optional<MulticoneFailure> failure;
  bool ok() const { return certificate.has_value(); }
};

/// Seeds balls around attracting fixed points of short words and grows them
/// under the generators until the union is forward invariant.
MulticoneResult find_multicone(MapSpan gens, const MulticoneConfig& cfg = {});

struct MulticoneVerification {
  bool ok = false;
  std::string detail;  // names the failing generator or word
  int words_checked = 0;
  double growth_slope = 0.0;  // log lambda_fit
  double growth_offset = 0.0;  // c with log|A_w| >= n slope - c on the sample
};

/// Re-checks every generator image against the stored margin and samples
/// random words, mapped letter by letter, for closure-into-interior.
MulticoneVerification verify_multicone(MapSpan gens, const MulticoneCertificate& cert,
                                       int random_words = 1000, int max_len = 30,
                                       std::uint64_t seed = 1);

/// Closure of the image of `u` under the word, computed letter by letter.
ArcUnion word_image(MapSpan gens, const Word& w, const ArcUnion& u);

struct SpectralEstimate {
  std::vector<std::pair<int, double>> per_length;  // (L, min |A_w|^(1/L))
  std::vector<Word> argmin;
  double periodic_upper = 0.0;
  Word periodic_word;
};

/// Exhaustive over all words of length <= l_max.
SpectralEstimate lower_spectral_estimate(MapSpan gens, int l_max,
                                         std::uint64_t budget = kDefaultNodeBudget);

struct RankOneResult {
  Arc interval;
  std::vector<Arc> images;  // per generator
};

/// Single open arc mapped into itself, and not onto itself, by every
/// generator. Endpoints come from generator fixed points and one harmonic
/// point per gap between them.
std::optional<RankOneResult> rank_one_test(MapSpan gens);
/// f(J) contained in J and f(J) != J, to tolerance `tol` in angle.
bool maps_strictly_into(const MoebiusMap& f, const Arc& j, double tol = 1e-10);

struct JorgensenValue {
  double value = 0.0;
  bool satisfied = false;
};

/// | |tr f|^2 - 4 | + | |tr [f,g]| - 2 |, satisfied when >= 1.
JorgensenValue jorgensen_check(const MoebiusMap& f, const MoebiusMap& g);
Rational jorgensen_exact(const RationalMatrix& f, const RationalMatrix& g);

/// True when (f, g) has no rank-one interval. Throws Error(CommonFixedPoint)
/// or Error(PreconditionFailed) for elliptic or identity inputs.
bool antiparallel_check(const MoebiusMap& f, const MoebiusMap& g);

}  // namespace mobius
