#include "dynspec/horseshoe.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynspec {

MarkovHorseshoe affine_horseshoe(const Sft& sft, const std::vector<Rational>& unstable,
                                 const std::vector<Rational>& stable, bool conservative, std::string name) {
  if (unstable.size() != sft.size() || stable.size() != sft.size())
    throw std::invalid_argument("horseshoe needs one stable and one unstable ratio per symbol");
  if (conservative && unstable != stable)
    throw std::invalid_argument("conservative horseshoe needs stable contraction equal to unstable ratio");
  std::vector<Word> expansion;
  for (int a : sft.labels()) expansion.push_back({a});
  return MarkovHorseshoe{sft,
                         affine_cantor(sft, unstable, name + ":unstable"),
                         affine_cantor(sft.transpose(), stable, name + ":stable"),
                         unstable,
                         stable,
                         std::move(expansion),
                         conservative,
                         std::move(name)};
}

MarkovHorseshoe linear_horseshoe(unsigned k, const Rational& r) {
  const std::vector<Rational> ratios(k, r);
  return affine_horseshoe(Sft::full_range(1, static_cast<int>(k)), ratios, ratios, true,
                          "linear:" + std::to_string(k) + ":" + r.str());
}

const RegularCantorSet& stable_cantor(const MarkovHorseshoe& h) { return h.stable; }
const RegularCantorSet& unstable_cantor(const MarkovHorseshoe& h) { return h.unstable; }

DimBounds hd_estimate(const MarkovHorseshoe& h, unsigned n, const Rational& tol, const Budget& budget) {
  const DimBounds s = dim_bounds(h.stable, n, tol, budget);
  const DimBounds u = dim_bounds(h.unstable, n, tol, budget);
  return {s.lower + u.lower, s.upper + u.upper};
}

namespace {

bool contains_factor(const Word& w, const Word& f) {
  return !f.empty() && std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

}  // namespace

MarkovHorseshoe sub_horseshoe(const MarkovHorseshoe& h, const std::vector<Word>& words,
                              const std::vector<Word>& forbidden_factors) {
  if (words.empty()) throw std::invalid_argument("sub-horseshoe needs at least one word");
  const std::size_t m = words.size();
  for (const Word& w : words)
    if (w.empty() || !h.sft.admissible(w)) throw std::invalid_argument("sub-horseshoe word is not admissible");
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Word uv = words[i];
      uv.insert(uv.end(), words[j].begin(), words[j].end());
      if (!h.sft.admissible(uv)) continue;
      if (std::any_of(forbidden_factors.begin(), forbidden_factors.end(),
                      [&](const Word& f) { return contains_factor(uv, f); }))
        continue;
      pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      used[i] = used[j] = true;
    }
  }
  std::vector<int> labels;
  for (std::size_t i = 0; i < m; ++i)
    if (used[i]) labels.push_back(static_cast<int>(i));
  if (labels.empty()) throw std::invalid_argument("sub-horseshoe has an empty alphabet");
  const Sft sft = Sft::from_pairs(labels, pairs);

  std::vector<Word> reversed(words);
  for (Word& w : reversed) std::reverse(w.begin(), w.end());

  MarkovHorseshoe out{sft,
                      word_cantor(h.unstable, words, sft, h.name + ":sub:unstable"),
                      word_cantor(h.stable, reversed, sft.transpose(), h.name + ":sub:stable"),
                      {},
                      {},
                      {},
                      h.conservative,
                      h.name + ":sub"};
  for (int label : sft.labels()) {
    const Word& w = words[static_cast<std::size_t>(label)];
    Rational u = 1, s = 1;
    Word e;
    for (int a : w) {
      const std::size_t i = h.sft.index_of(a);
      u *= h.unstable_ratio[i];
      s *= h.stable_ratio[i];
      e.insert(e.end(), h.expansion[i].begin(), h.expansion[i].end());
    }
    out.unstable_ratio.push_back(u);
    out.stable_ratio.push_back(s);
    out.expansion.push_back(std::move(e));
  }
  return out;
}

Word expand_word(const MarkovHorseshoe& h, const Word& w) {
  Word e;
  for (int a : w) {
    const Word& block = h.expansion[h.sft.index_of(a)];
    e.insert(e.end(), block.begin(), block.end());
  }
  return e;
}

Enclosure max_along_word(const MarkovHorseshoe& h, const OrbitFunctional& f, const PeriodicPoint& p,
                         const Rational& tol) {
  if (!h.sft.cyclically_admissible(p.word)) throw std::invalid_argument("periodic point is not admissible");
  const std::vector<Enclosure> c = potential_candidates(PeriodicPoint{expand_word(h, p.word)}, f, tol);
  Enclosure best = c.front();
  for (std::size_t i = 1; i < c.size(); ++i) best = enclosure_max(best, c[i]);
  return best;
}

SpectrumSample horseshoe_spectrum(const MarkovHorseshoe& h, const OrbitFunctional& f, unsigned max_period,
                                  const Rational& tol) {
  SpectrumSample sample;
  sample.max_period = max_period;
  sample.tol = tol;
  for (const PeriodicPoint& p : enumerate_periodic(h.sft, max_period))
    sample.values.push_back({max_along_word(h, f, p, tol), p.word});
  sort_sample(sample.values);
  return sample;
}

}  // namespace dynspec
