#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobius/hyperbolicity.hpp"
#include "mobius/limit_sets.hpp"
#include "mobius/semigroup.hpp"
#include "mobius/tuple_io.hpp"

namespace mobius {

struct ClassifyConfig {
  int elliptic_depth = 8;
  int inverse_depth = 6;
  int limit_depth = 8;
  int nonsd_depth = 10;
  int spectral_depth = 6;
  double gap = kDefaultHullGap;
  /// Seed depths tried in order; the first certificate wins.
  std::vector<int> seed_depths{6};
  MulticoneConfig multicone;
  SemidiscreteConfig semidiscrete;
  std::uint64_t budget = kDefaultNodeBudget;
};

/// "quick" or "thorough"; throws Error(PreconditionFailed) otherwise.
ClassifyConfig preset(std::string_view name);

struct NegativeCertificate {
  enum class Kind { EllipticWord, IdentityApproach, LimitSetIntersection, NonHyperbolicGenerator };
  Kind kind = Kind::NonHyperbolicGenerator;
  std::optional<WordWitness> witness;  // EllipticWord, IdentityApproach
  std::optional<BoundaryPoint> point;  // LimitSetIntersection
  Word forward_word, backward_word;
  int generator = -1;
  std::string detail;
};
const char* to_string(NegativeCertificate::Kind k);

struct HStatus {
  enum class Kind { CertifiedYes, CertifiedNo, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<MulticoneCertificate> certificate;
  std::optional<NegativeCertificate> negative;
  std::optional<MulticoneFailure> search_failure;
  std::string note;
};

/// Shared by the elliptic-locus and inverse-free entries.
struct WitnessStatus {
  enum class Kind { Witness, CertifiedNo, NoneUpToDepth, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<WordWitness> witness;
  int depth = 0;
  std::string basis;  // what certified the absence
};

struct SemidiscreteStatus {
  enum class Kind { RefutedWitness, RefutedByInference, NoRefutationUpToBudget };
  Kind kind = Kind::NoRefutationUpToBudget;
  std::optional<WordWitness> witness;
  std::optional<NotSemidiscreteConclusion> inference;
  std::optional<WordWitness> best_candidate;
  bool structurally_semidiscrete = false;  // multicone or rank-one interval
  std::string note;
};

struct PStatus {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  std::string reason;
  bool fully_certified = false;  // every ingredient exact, not "up to depth"
};

const char* to_string(HStatus::Kind k);
const char* to_string(WitnessStatus::Kind k);
const char* to_string(SemidiscreteStatus::Kind k);
const char* to_string(PStatus::Kind k);

struct LociReport {
  std::size_t n = 0;
  std::vector<MapClass> generator_classes;
  ElementaryStatus elementary;
  std::optional<AffineCertificate> affine;
  WitnessStatus in_E;
  WitnessStatus inverse_free;
  HStatus in_H;
  std::optional<LimitSetApprox> forward, backward;
  std::optional<CoreSet> cores;
  std::optional<RankOneResult> rank_one;
  SemidiscreteStatus semidiscrete;
  PStatus in_P;
  std::optional<SpectralEstimate> spectral;
  bool partial = false;  // some stage hit its budget
  std::vector<std::string> notes;
};

LociReport classify(const Tuple& t, const ClassifyConfig& cfg = {});

struct ConsistencyVerdict {
  bool consistent = true;
  std::vector<std::string> rules_checked;
  std::vector<std::string> violations;
};

/// Rule check for statuses that cannot hold together.
ConsistencyVerdict sdc_crosscheck(const LociReport& r);

}  // namespace mobius
