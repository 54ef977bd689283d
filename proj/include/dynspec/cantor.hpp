#pragma once

#include "dynspec/numeric.hpp"
#include "dynspec/symbolic.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dynspec {

struct Budget {
  std::uint64_t cylinders = 1'000'000;
  std::uint64_t pairs = 10'000'000;
};

enum class BranchKind { affine, gauss, composite };

/// Markov Cantor set given by base intervals I(a) and, for every allowed pair
/// (a,b), an inverse branch ψ_ab (a Möbius map) carrying I(b) onto the piece
/// I(a,b) ⊆ I(a). The expanding map on I(a,b) is ψ_ab⁻¹.
class RegularCantorSet {
 public:
  RegularCantorSet(Sft sft, std::vector<Enclosure> base, std::vector<std::vector<Mobius<Rational>>> branches,
                   BranchKind kind, std::string name);

  const Sft& sft() const { return sft_; }
  const Enclosure& base(std::size_t a) const { return base_[a]; }
  const std::vector<Enclosure>& bases() const { return base_; }
  const Mobius<Rational>& branch(std::size_t a, std::size_t b) const { return branches_[a][b]; }
  Enclosure piece(std::size_t a, std::size_t b) const;
  /// Bounds on |Dg| over I(a,b).
  Rational dmin(std::size_t a, std::size_t b) const;
  Rational dmax(std::size_t a, std::size_t b) const;
  BranchKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  void validate() const;

  Sft sft_;
  std::vector<Enclosure> base_;
  std::vector<std::vector<Mobius<Rational>>> branches_;
  BranchKind kind_;
  std::string name_;
};

/// Self-similar set over an Sft: symbol a has ratio r_a, intervals
/// [t_a, t_a + r_a] laid out in [0,1] with equal gaps.
RegularCantorSet affine_cantor(const Sft& sft, const std::vector<Rational>& ratios, std::string name = "affine");
RegularCantorSet affine_cantor(const std::vector<Rational>& ratios);
RegularCantorSet middle_third();
/// Continued fractions with all partial quotients in 1..N.
RegularCantorSet gauss_cantor(unsigned n);
/// {p} as a degenerate Cantor set.
RegularCantorSet point_cantor(const Rational& p);

/// Cantor set over a word alphabet: symbol i stands for words[i] in K, with
/// the transitions of `over` (whose labels index `words` from 0). Each symbol
/// interval is the K-cylinder of its word.
RegularCantorSet word_cantor(const RegularCantorSet& k, const std::vector<Word>& words, const Sft& over,
                             std::string name = "words");

/// Enclosure of the invariant interval of gauss_cantor(N).
Enclosure gauss_hull(unsigned n, unsigned iterations = 60);

struct Cylinder {
  Word word;
  Enclosure interval;
  /// 1 / max |Ψ_w'| and 1 / min |Ψ_w'| for the inverse branch of the word.
  Rational dmin_product;
  Rational dmax_product;
};

struct CylinderCover {
  unsigned level = 0;
  std::vector<Cylinder> cylinders;
};

CylinderCover construction_level(const RegularCantorSet& k, unsigned n, const Budget& budget = {});

struct DimBounds {
  Rational lower;
  Rational upper;
};

/// Rigorous bounds on HD(K) from level-n words (n >= 2).
DimBounds dim_bounds(const RegularCantorSet& k, unsigned n, const Rational& tol, const Budget& budget = {});

/// Sorted, pairwise disjoint intervals with union containing K1 + K2.
std::vector<Enclosure> cantor_sum_cover(const RegularCantorSet& k1, const RegularCantorSet& k2, unsigned n,
                                        const Budget& budget = {});

/// Merge overlapping or touching intervals; gaps are kept.
std::vector<Enclosure> merge_intervals(std::vector<Enclosure> intervals);

struct SumCheck {
  bool contained = false;
  Enclosure target;
  std::optional<Enclosure> largest_gap;
};

SumCheck sum_interval_check(const std::vector<Enclosure>& cover, const Rational& lo, const Rational& hi,
                            const Rational& slack);

}  // namespace dynspec
