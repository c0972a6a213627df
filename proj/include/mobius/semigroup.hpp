#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mobius/exact.hpp"
#include "mobius/moebius_map.hpp"
#include "mobius/tuple_io.hpp"

namespace mobius {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Generator indices i_0 ... i_n (0-based) evaluating to A_{i_n} ... A_{i_0}:
/// the last letter is applied last.
using Word = std::vector<int>;

MoebiusMap evaluate(MapSpan gens, const Word& w);
ExactAffine evaluate(const std::vector<ExactAffine>& gens, const Word& w);
/// 1-based, e.g. "[1,3,2]".
std::string word_to_string(const Word& w);

/// Words of length 1..max_len over n letters (saturates at UINT64_MAX).
std::uint64_t word_count(std::size_t n, int max_len);

enum class WitnessKind {
  EllipticWitness,
  IdentityWitness,
  InverseWitness,
  IdentityApproach,
  UnitMultiplier,  // affine word with lambda == 1 but nonzero translation
};

const char* to_string(WitnessKind k);

struct WordWitness {
  Word word;
  MoebiusMap product;
  WitnessKind kind = WitnessKind::IdentityWitness;
  double distance = 0.0;  // psl_distance(product, Id)
  std::size_t split = 0;  // InverseWitness: word[0, split) and word[split, end)
};

WordWitness make_witness(MapSpan gens, Word w, WitnessKind kind);
/// Recomputes the product and checks the kind's defining predicate.
bool revalidate(MapSpan gens, const WordWitness& w, double tol = 1e-10);

/// Return false to stop the enumeration early.
using WordVisitor = std::function<bool(const Word&, const MoebiusMap&)>;

/// Every word of length <= max_len once, in length-then-lexicographic order.
/// Throws Error(BudgetExceeded) before visiting anything when the word count
/// exceeds `budget`.
void enumerate_words(MapSpan gens, int max_len, const WordVisitor& visit,
                     std::uint64_t budget = kDefaultNodeBudget);

/// Shortest, lexicographically least word that is elliptic or the identity.
std::optional<WordWitness> find_elliptic_or_identity(MapSpan gens, int max_len,
                                                     std::uint64_t budget = kDefaultNodeBudget);

/// Product of two words equal to the identity within 1e-10.
std::optional<WordWitness> inverse_free_violation(MapSpan gens, int max_len,
                                                  std::uint64_t budget = kDefaultNodeBudget);

struct WordPoint {
  BoundaryPoint point;
  Word word;
};

struct WordFixedPoints {
  std::vector<WordPoint> attracting;
  std::vector<WordPoint> repelling;
};

/// Fixed points of the hyperbolic words of length <= depth; points closer
/// than 1e-12 rad are merged, keeping the first (shortest) word.
WordFixedPoints hyperbolic_word_fixed_points(MapSpan gens, int depth,
                                             std::uint64_t budget = kDefaultNodeBudget);

enum class AffineStatus { Certified, Inapplicable, Refuted };
const char* to_string(AffineStatus s);

struct AffineCertificate {
  AffineStatus status = AffineStatus::Inapplicable;
  std::string reason;
  std::optional<ExactAffineTuple> affine;
  std::optional<WordWitness> witness;  // Refuted only
};

/// Decides exactly whether some nonempty word has multiplier 1, i.e. whether
/// a nonzero x >= 0 solves V x = 0 for the exponent matrix V.
AffineCertificate certify_no_elliptic_affine(const ExactAffineTuple& affine, MapSpan gens);
AffineCertificate certify_no_elliptic_affine(const Tuple& t);

/// Exact feasibility of {x >= 0, sum x = 1, V x = 0} by Fourier-Motzkin
/// elimination; returns a feasible point when one exists.
std::optional<std::vector<Rational>> exponent_cone_point(const std::vector<std::vector<int>>& columns);

struct SemidiscreteConfig {
  int max_len = 9;
  std::size_t beam_width = 512;
  int e_max = 12;
  double threshold = 0.25;
  std::uint64_t permutation_cap = 10'000;
};

struct SemidiscreteSearch {
  std::optional<WordWitness> witness;  // IdentityApproach below threshold
  std::optional<WordWitness> best;     // best candidate regardless of threshold
  bool partial = false;
};

SemidiscreteSearch refute_semidiscrete(const Tuple& t, const SemidiscreteConfig& cfg = {});

/// g^n o f^n for f = az+b, g = cz+d with ac = 1; a translation.
/// Throws Error(PreconditionFailed) when ac != 1 or n < 0.
ExactAffine translation_accumulation(const ExactAffine& f, const ExactAffine& g, int n);

}  // namespace mobius
