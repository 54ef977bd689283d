#pragma once

#include "dynspec/cantor.hpp"
#include "dynspec/symbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dynspec {

/// Symbolic Markov horseshoe, locally K^s × K^u. Each symbol carries an
/// unstable contraction ratio (its width in K^u) and a stable one (its width
/// in K^s), and expands to a word over the base labels (itself for a
/// horseshoe built from ratios, the defining word for a sub-horseshoe).
struct MarkovHorseshoe {
  Sft sft;
  RegularCantorSet unstable;
  RegularCantorSet stable;  // over sft.transpose(), reversed words
  std::vector<Rational> unstable_ratio;
  std::vector<Rational> stable_ratio;
  std::vector<Word> expansion;
  bool conservative = false;
  std::string name;
};

/// Affine horseshoe. With conservative = true the map preserves area, so the
/// stable contraction equals the unstable one (expansion 1/u times
/// contraction s equals 1); mismatched ratios are rejected.
MarkovHorseshoe affine_horseshoe(const Sft& sft, const std::vector<Rational>& unstable,
                                 const std::vector<Rational>& stable, bool conservative, std::string name = "horseshoe");

/// Linear Smale horseshoe on k symbols with all ratios r.
MarkovHorseshoe linear_horseshoe(unsigned k, const Rational& r);

const RegularCantorSet& stable_cantor(const MarkovHorseshoe& h);
const RegularCantorSet& unstable_cantor(const MarkovHorseshoe& h);

/// Sum of the factor dimension bounds.
DimBounds hd_estimate(const MarkovHorseshoe& h, unsigned n, const Rational& tol, const Budget& budget = {});

/// Horseshoe over a word alphabet: symbol i is words[i]; u -> v is allowed
/// when uv is admissible in h and contains none of the forbidden factors.
/// Symbols with no surviving transition are dropped.
MarkovHorseshoe sub_horseshoe(const MarkovHorseshoe& h, const std::vector<Word>& words,
                              const std::vector<Word>& forbidden_factors = {});

/// Window function on two-sided windows (x_{-m}, ..., x_m) of base labels.
using OrbitFunctional = Potential;

/// Base-label cycle traced by a periodic point of h.
Word expand_word(const MarkovHorseshoe& h, const Word& w);

/// max of F over the positions of one period of the orbit.
Enclosure max_along_word(const MarkovHorseshoe& h, const OrbitFunctional& f, const PeriodicPoint& p,
                         const Rational& tol);

SpectrumSample horseshoe_spectrum(const MarkovHorseshoe& h, const OrbitFunctional& f, unsigned max_period,
                                  const Rational& tol);

}  // namespace dynspec
