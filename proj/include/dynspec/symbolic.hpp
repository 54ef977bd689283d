#pragma once

#include "dynspec/numeric.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dynspec {

using Word = std::vector<int>;
using AdjacencyMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Subshift of finite type. Symbols carry integer labels (sorted ascending);
/// the adjacency matrix is indexed by position in the label list.
class Sft {
 public:
  Sft() = default;
  Sft(std::vector<int> labels, AdjacencyMatrix allowed);

  static Sft full(std::vector<int> labels);
  /// Full shift on lo..hi.
  static Sft full_range(int lo, int hi);
  static Sft from_pairs(std::vector<int> labels, const std::vector<std::pair<int, int>>& pairs);
  static Sft from_forbidden(std::vector<int> labels, const std::vector<std::pair<int, int>>& forbidden);

  std::size_t size() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  int label(std::size_t i) const { return labels_[i]; }
  std::size_t index_of(int label) const;
  bool has_label(int label) const;

  const AdjacencyMatrix& adjacency() const { return allowed_; }
  bool allowed(std::size_t i, std::size_t j) const { return allowed_(i, j) != 0; }
  bool allowed_labels(int a, int b) const;
  std::vector<std::pair<int, int>> pairs() const;

  bool admissible(const Word& w) const;
  bool cyclically_admissible(const Word& w) const;

  /// Reversed transitions: (b,a) allowed iff (a,b) allowed here.
  Sft transpose() const;

  /// Smallest k with A^k > 0 entrywise, if the shift is mixing.
  std::optional<unsigned> mixing_index() const;

  friend bool operator==(const Sft&, const Sft&) = default;

 private:
  std::vector<int> labels_;
  AdjacencyMatrix allowed_;
};

/// Number of admissible words of length len (sum of the entries of A^{len-1}).
Integer count_words(const Sft& s, unsigned len);

/// All admissible words of length len in lexicographic order of labels.
std::vector<Word> enumerate_words(const Sft& s, unsigned len);

/// Strongly connected components of a 0/1 graph, each sorted; components are
/// listed in order of their smallest vertex.
std::vector<std::vector<std::size_t>> strongly_connected_components(const AdjacencyMatrix& adj);

struct PeriodicPoint {
  Word word;
  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;
};

PeriodicPoint make_periodic(const Sft& s, Word word);

/// Lexicographically least rotation.
Word canonical_rotation(const Word& w);

/// One primitive representative (least rotation) per necklace of length
/// <= max_period, sorted by length then lexicographically.
std::vector<PeriodicPoint> enumerate_periodic(const Sft& s, unsigned max_period);

/// Function on windows (x_{-m}, ..., x_m) of 2m+1 labels.
struct Potential {
  unsigned locality = 0;
  std::function<Enclosure(const Word& window, const Rational& tol)> rule;
  std::string name;

  Enclosure operator()(const Word& window, const Rational& tol) const { return rule(window, tol); }
};

Potential constant_potential(const Rational& c);
/// Label of the central symbol.
Potential symbol_potential();
Potential indicator_potential(int label);
/// α₀ + β₀ truncated after m digits on each side. The unseen tails are
/// bracketed by [1, ∞), so the enclosure always contains the value of every
/// sequence that agrees with the window.
Potential cf_sum_potential(unsigned m);

/// f evaluated at each of the |w| shifts of the periodic point.
std::vector<Enclosure> potential_candidates(const PeriodicPoint& p, const Potential& f, const Rational& tol);

Enclosure dyn_markov_value(const Sft& s, const PeriodicPoint& p, const Potential& f, const Rational& tol);

struct SpectrumPoint {
  Enclosure value;
  Word witness;
};

struct SpectrumSample {
  std::vector<SpectrumPoint> values;
  unsigned max_period = 0;
  Rational tol;
};

/// Sort by midpoint, ties by witness (length, then lexicographic).
void sort_sample(std::vector<SpectrumPoint>& values);

SpectrumSample spectrum_sample(const Sft& s, const Potential& f, unsigned max_period, const Rational& tol);

struct CandidateInterval {
  Rational lo;
  Rational hi;
  std::size_t run_length = 0;
};

/// Maximal runs of midpoints with consecutive gaps <= gap_threshold, at least
/// two points long. Heuristic only.
std::vector<CandidateInterval> interval_detect(const SpectrumSample& sample, const Rational& gap_threshold);

}  // namespace dynspec
