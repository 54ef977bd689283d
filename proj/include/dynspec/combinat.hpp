#pragma once

#include "dynspec/cantor.hpp"
#include "dynspec/numeric.hpp"
#include "dynspec/symbolic.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace dynspec {

/// Square 0/1 matrix.
class DenseMatrix {
 public:
  using Storage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

  explicit DenseMatrix(Storage entries);
  static DenseMatrix ones(std::size_t n);

  std::size_t n() const { return static_cast<std::size_t>(entries_.rows()); }
  std::uint64_t ones_count() const { return ones_; }
  Rational density() const;
  const Storage& entries() const { return entries_; }
  bool operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0;
  }

 private:
  Storage entries_;
  std::uint64_t ones_ = 0;
};

/// n×n matrix of ones with `zeros` zero entries at distinct uniform positions.
DenseMatrix random_dense_matrix(std::size_t n, std::size_t zeros, std::mt19937_64& rng);

/// Uniform integer in [0, bound) by rejection; stable across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

using PowerMatrix = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A^k with exact 64-bit entries; n <= 512 and k <= 8 keep every entry
/// below 2^63, anything larger is refused.
PowerMatrix matrix_power(const DenseMatrix& a, unsigned k);

void require_dense(const DenseMatrix& a);

struct TraceCheck {
  Integer trace;
  Rational bound;
  bool holds = false;
};

/// tr(A^k) against (n/2)^k, for density >= 99/100.
TraceCheck trace_bound_check(const DenseMatrix& a, unsigned k);
/// Same check for k = 2..k_max, sharing the matrix powers.
std::vector<TraceCheck> trace_bound_checks(const DenseMatrix& a, unsigned k_max);

struct CoreReport {
  std::size_t n = 0;
  Rational density;
  std::vector<std::size_t> core;
  bool size_ok = false;    // 5|Z| >= 4n
  bool square_ok = false;  // 5 (A²)_ij >= 4n on Z
  unsigned k_max = 2;
  std::vector<bool> power_ok;  // k = 3..k_max: (A^k)_ij >= (4/5)(3/5)^{k-2} n^{k-1}
  bool passed() const;
};

/// Rows and columns with at least 9n/10 ones, intersected.
CoreReport dense_core(const DenseMatrix& a, unsigned k_max = 3);

struct ProhibitionInstance {
  /// θ_1..θ_N as words of the ambient Cantor set.
  std::vector<Word> words;
  /// Explicitly prohibited tuples of θ-indices (length 2·block).
  std::vector<std::vector<std::size_t>> prohibited_tuples;
  /// θ_U θ_V pairs; a block word is prohibited when it contains the
  /// concatenation θ_U θ_V as a factor.
  std::vector<std::pair<std::size_t, std::size_t>> prohibited_transitions;
  /// Forbidden symbol factors.
  std::vector<Word> forbidden_factors;
  /// P_i: θ_i prohibits θ_j θ_k when some θ_r, r in P_i, is a factor of θ_j θ_k.
  std::vector<std::vector<std::size_t>> disturb;
};

/// Disturb sets of the given size drawn without replacement, one per word.
std::vector<std::vector<std::size_t>> random_disturb_sets(std::size_t n, std::size_t size, std::uint64_t seed);

bool prohibits(const ProhibitionInstance& inst, std::size_t i, std::size_t j, std::size_t k);

struct PruneReport {
  std::size_t block = 1;
  std::size_t blocks = 0;
  std::uint64_t ones = 0;
  Rational density;
  bool core_applied = false;
  std::vector<std::size_t> core;      // surviving block indices
  std::vector<Word> block_words;      // concatenated θ-words, by block index
  std::optional<Sft> pruned_sft;      // labels are block indices
  unsigned level = 0;
  unsigned pruned_level = 0;
  std::optional<DimBounds> original;
  std::optional<DimBounds> pruned;
  Rational epsilon;
  bool within_epsilon = false;
};

/// Block matrix over b-tuples of θ-words, its dense core and the dimension
/// of the Cantor subset over the surviving blocks.
PruneReport prune_to_core_cantor(const RegularCantorSet& k, const ProhibitionInstance& inst, unsigned block,
                                 unsigned level, const Rational& epsilon, const Rational& tol,
                                 const Budget& budget = {});

struct InterferenceRelation {
  std::vector<int> elements;
  std::vector<std::pair<int, int>> interferes;  // (i, j): i interferes with j
};

/// Elements that are neither protected nor interfered with by a protected one.
std::vector<int> interference_free_selection(const InterferenceRelation& rel, const std::vector<int>& protect);

struct InjectionRun {
  std::uint64_t domain = 0;
  std::vector<std::uint64_t> image;
  bool injective = false;
};

/// floor(N^alpha) computed exactly.
std::uint64_t injection_domain(std::uint64_t n, const Rational& alpha);

InjectionRun random_injection(std::uint64_t n, const Rational& alpha, std::uint64_t seed);

struct InjectionEstimate {
  std::uint64_t n = 0;
  Rational alpha;
  std::uint64_t domain = 0;
  std::uint64_t trials = 0;
  std::uint64_t injective = 0;
  double rate = 0;
  double sigma = 0;
  double bound = 0;  // 1 - 1/(2 N^{1-2α})
  double exact_probability = 0;
  bool passed = false;  // rate >= bound - 3σ
};

InjectionEstimate injection_trials(std::uint64_t n, const Rational& alpha, std::uint64_t trials, std::uint64_t seed);

struct CensusReport {
  std::size_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t prohibited = 0;
  double estimate = 0;
  double comparator = 0;  // N^{-1/2} log N
  double c = 0;
  bool below = false;
};

CensusReport prohibited_transition_census(const ProhibitionInstance& inst, std::uint64_t samples, std::uint64_t seed,
                                          double c);

}  // namespace dynspec
