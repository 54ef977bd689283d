#include "dynspec/cf_arith.hpp"
#include "dynspec/io.hpp"
#include "dynspec/symbolic.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace dynspec;

namespace {

const Rational kTol(1, 1000000000);

Sft golden() { return Sft::from_forbidden({0, 1}, {{1, 1}}); }

// every word of length len over the labels, filtered by the adjacency
std::vector<Word> brute_words(const Sft& s, unsigned len, bool cyclic) {
  std::vector<Word> out;
  const std::size_t k = s.size();
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    bool ok = true;
    for (unsigned i = 0; i + 1 < len && ok; ++i) ok = s.adjacency()(idx[i], idx[i + 1]) != 0;
    if (ok && cyclic) ok = s.adjacency()(idx[len - 1], idx[0]) != 0;
    if (ok) {
      Word w;
      for (std::size_t i : idx) w.push_back(s.label(i));
      out.push_back(w);
    }
    unsigned p = len;
    while (p > 0 && ++idx[p - 1] == k) idx[--p] = 0;
    if (p == 0) break;
  }
  return out;
}

// primitive necklaces by rotating every cyclic word
std::set<Word> brute_necklaces(const Sft& s, unsigned max_period) {
  std::set<Word> out;
  for (unsigned len = 1; len <= max_period; ++len) {
    for (const Word& w : brute_words(s, len, true)) {
      Word best = w;
      bool primitive = true;
      for (unsigned r = 1; r < len; ++r) {
        Word rot = w;
        std::rotate(rot.begin(), rot.begin() + r, rot.end());
        if (rot == w) primitive = false;
        best = std::min(best, rot);
      }
      if (primitive) out.insert(best);
    }
  }
  return out;
}

Sft random_sft(std::mt19937_64& rng, int k) {
  std::vector<int> labels;
  for (int i = 1; i <= k; ++i) labels.push_back(i);
  std::vector<std::pair<int, int>> pairs;
  std::bernoulli_distribution coin(0.6);
  for (int a = 1; a <= k; ++a)
    for (int b = 1; b <= k; ++b)
      if (coin(rng)) pairs.emplace_back(a, b);
  // each symbol keeps at least one outgoing and incoming transition
  for (int a = 1; a <= k; ++a) pairs.emplace_back(a, a % k + 1);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Sft::from_pairs(labels, pairs);
}

SpectrumSample grid_sample(const std::vector<Rational>& points) {
  SpectrumSample s;
  for (const Rational& p : points) s.values.push_back({Enclosure::exact(p), Word{1}});
  s.max_period = 1;
  s.tol = kTol;
  return s;
}

}  // namespace

TEST(Sft, Construction) {
  const Sft g = golden();
  EXPECT_EQ(g.size(), 2u);
  EXPECT_FALSE(g.allowed_labels(1, 1));
  EXPECT_TRUE(g.allowed_labels(0, 1));
  EXPECT_TRUE(g.cyclically_admissible({0, 1}));
  EXPECT_FALSE(g.cyclically_admissible({1, 0, 1}));
  EXPECT_EQ(Sft::full_range(1, 3).mixing_index(), 1u);
  EXPECT_EQ(g.mixing_index(), 2u);
  EXPECT_FALSE(Sft::from_pairs({1, 2}, {{1, 2}, {2, 1}}).mixing_index().has_value());
  EXPECT_THROW(Sft::from_pairs({1, 2}, {{1, 1}}), std::invalid_argument);  // 2 never occurs
}

TEST(Sft, TransposeReversesTransitions) {
  const Sft s = Sft::from_pairs({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}, {1, 1}});
  const Sft t = s.transpose();
  for (const auto& [a, b] : s.pairs()) EXPECT_TRUE(t.allowed_labels(b, a));
  EXPECT_EQ(s.pairs().size(), t.pairs().size());
  EXPECT_EQ(t.transpose(), s);
}

TEST(CountWords, Examples) {
  EXPECT_EQ(count_words(Sft::full_range(1, 4), 3), 64);
  EXPECT_EQ(count_words(golden(), 4), 8);
  EXPECT_EQ(count_words(golden(), 1), 2);
  EXPECT_EQ(enumerate_words(golden(), 4).size(), 8u);
}

TEST(CountWords, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 12; ++t) {
    const Sft s = random_sft(rng, 1 + t % 4);
    for (unsigned len = 1; len <= 8; ++len) {
      const std::vector<Word> brute = brute_words(s, len, false);
      EXPECT_EQ(count_words(s, len), Integer(brute.size()));
      EXPECT_EQ(enumerate_words(s, len), brute);
    }
  }
}

TEST(EnumeratePeriodic, Examples) {
  auto words = [](const std::vector<PeriodicPoint>& v) {
    std::vector<Word> out;
    for (const auto& p : v) out.push_back(p.word);
    return out;
  };
  EXPECT_EQ(words(enumerate_periodic(Sft::full({1}), 3)), (std::vector<Word>{{1}}));
  EXPECT_EQ(words(enumerate_periodic(Sft::full({1, 2}), 2)), (std::vector<Word>{{1}, {2}, {1, 2}}));
  EXPECT_EQ(words(enumerate_periodic(golden(), 2)), (std::vector<Word>{{0}, {0, 1}}));
}

TEST(EnumeratePeriodic, MatchesNecklaceOracle) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const Sft s = random_sft(rng, 1 + t % 4);
    const std::vector<PeriodicPoint> got = enumerate_periodic(s, 6);
    std::set<Word> seen;
    for (const PeriodicPoint& p : got) seen.insert(p.word);
    EXPECT_EQ(seen.size(), got.size());
    EXPECT_EQ(seen, brute_necklaces(s, 6));
    for (std::size_t i = 1; i < got.size(); ++i) {
      const Word& a = got[i - 1].word;
      const Word& b = got[i].word;
      EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
    }
  }
}

TEST(EnumeratePeriodic, RejectsInadmissibleWords) {
  EXPECT_THROW(make_periodic(golden(), {1, 1}), std::invalid_argument);
  EXPECT_THROW(make_periodic(golden(), {}), std::invalid_argument);
  EXPECT_EQ(canonical_rotation({2, 1, 3}), (Word{1, 3, 2}));
}

TEST(DynMarkovValue, Examples) {
  const Sft full2 = Sft::full_range(1, 2);
  EXPECT_EQ(dyn_markov_value(full2, make_periodic(full2, {1, 2}), constant_potential(Rational(7, 3)), kTol),
            Enclosure::exact(Rational(7, 3)));
  EXPECT_EQ(dyn_markov_value(full2, make_periodic(full2, {1, 2}), indicator_potential(2), kTol),
            Enclosure::exact(1));
  EXPECT_EQ(dyn_markov_value(full2, make_periodic(full2, {1, 2}), symbol_potential(), kTol), Enclosure::exact(2));
}

TEST(DynMarkovValue, TruncatedSumConvergesToSqrt5) {
  const Sft s = Sft::full({1});
  Enclosure prev(0, 100);
  for (unsigned m : {2u, 4u, 8u, 16u, 24u}) {
    const Enclosure e = dyn_markov_value(s, make_periodic(s, {1}), cf_sum_potential(m), kTol);
    EXPECT_TRUE(oracle::encloses_sqrt(e, 5)) << m;
    EXPECT_LT(e.width(), prev.width());
    prev = e;
  }
  EXPECT_LT(prev.width(), Rational(1, 1000000));
}

TEST(DynMarkovValue, TruncatedSumEnclosesExactMarkovValue) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> digit(1, 3), len(1, 5);
  const Sft s = Sft::full_range(1, 3);
  for (int t = 0; t < 20; ++t) {
    Word w;
    for (int i = len(rng); i > 0; --i) w.push_back(digit(rng));
    const Enclosure exact = markov_value_word(to_digits(w), Rational(1, 1000000000000LL));
    const Enclosure e = dyn_markov_value(s, make_periodic(s, w), cf_sum_potential(10), kTol);
    EXPECT_TRUE(e.overlaps(exact));
  }
}

TEST(DynMarkovValue, RotationInvariant) {
  const Sft s = Sft::full_range(1, 3);
  const Potential f = cf_sum_potential(6);
  const Word w{1, 3, 2, 2};
  std::vector<Enclosure> base = potential_candidates(make_periodic(s, w), f, kTol);
  auto by_lo = [](const Enclosure& a, const Enclosure& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); };
  std::sort(base.begin(), base.end(), by_lo);
  for (std::size_t r = 1; r < w.size(); ++r) {
    Word rot = w;
    std::rotate(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(r), rot.end());
    std::vector<Enclosure> c = potential_candidates(make_periodic(s, rot), f, kTol);
    std::sort(c.begin(), c.end(), by_lo);
    EXPECT_EQ(c, base);
  }
}

TEST(SpectrumSample, SmallCases) {
  const SpectrumSample s = spectrum_sample(Sft::full_range(1, 2), cf_sum_potential(16), 1, kTol);
  ASSERT_EQ(s.values.size(), 2u);
  EXPECT_TRUE(oracle::encloses_sqrt(s.values[0].value, 5));
  EXPECT_TRUE(oracle::encloses_sqrt(s.values[1].value, 8));
  EXPECT_EQ(spectrum_sample(Sft::full_range(1, 5), symbol_potential(), 1, kTol).values.size(), 5u);
  EXPECT_EQ(spectrum_sample(Sft::full({3}), cf_sum_potential(4), 4, kTol).values.size(), 1u);
}

TEST(SpectrumSample, WitnessesGrowWithPeriod) {
  const Sft s = Sft::full_range(1, 3);
  std::set<Word> prev;
  for (unsigned p = 1; p <= 5; ++p) {
    std::set<Word> cur;
    for (const SpectrumPoint& v : spectrum_sample(s, symbol_potential(), p, kTol).values) cur.insert(v.witness);
    EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }
}

TEST(SpectrumSample, MinimumWitnessedByOne) {
  const Sft s = Sft::full_range(1, 4);
  for (unsigned p = 1; p <= 6; ++p) {
    const SpectrumSample sample = spectrum_sample(s, cf_sum_potential(8), p, kTol);
    ASSERT_FALSE(sample.values.empty());
    EXPECT_EQ(sample.values.front().witness, Word{1}) << p;
    EXPECT_TRUE(oracle::encloses_sqrt(sample.values.front().value, 5));
    for (std::size_t i = 1; i < sample.values.size(); ++i)
      EXPECT_LE(sample.values[i - 1].value.midpoint(), sample.values[i].value.midpoint());
  }
}

TEST(IntervalDetect, Examples) {
  std::vector<Rational> grid;
  for (int i = 0; i <= 1000; ++i) grid.emplace_back(i, 1000);
  const auto one = interval_detect(grid_sample(grid), Rational(1, 100));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].lo, 0);
  EXPECT_EQ(one[0].hi, 1);
  EXPECT_EQ(one[0].run_length, 1001u);

  EXPECT_TRUE(interval_detect(grid_sample({0, 1}), Rational(1, 100)).empty());

  std::vector<Rational> gapped;
  for (int i = 0; i <= 100; ++i) gapped.emplace_back(i, 1000);
  for (int i = 600; i <= 700; ++i) gapped.emplace_back(i, 1000);
  const auto two = interval_detect(grid_sample(gapped), Rational(1, 100));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].hi, Rational(1, 10));
  EXPECT_EQ(two[1].lo, Rational(3, 5));

  EXPECT_THROW(interval_detect(grid_sample({}), Rational(1, 100)), std::invalid_argument);
  EXPECT_THROW(interval_detect(grid_sample({0, 1}), 0), std::invalid_argument);
}

TEST(SpectrumSample, CsvFormat) {
  const SpectrumSample s = spectrum_sample(Sft::full_range(1, 2), symbol_potential(), 2, kTol);
  const std::string csv = sample_csv(s);
  EXPECT_EQ(csv.rfind("value_lo,value_hi,witness_word\n", 0), 0u);
  EXPECT_NE(csv.find(",1 2\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
