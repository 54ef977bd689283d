#include "dynspec/cf_arith.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace dynspec;

namespace {

const Rational kTol(1, 1000000000);

std::vector<Integer> digits(std::initializer_list<int> d) { return {d.begin(), d.end()}; }

Rational golden_poly(const Rational& x) { return x * x - x - 1; }

}  // namespace

TEST(ContinuedFraction, GoldenRatio) {
  const Enclosure e = cf_value(ContinuedFraction::parse("[1;(1)]"), kTol);
  EXPECT_TRUE(oracle::encloses_root(e, golden_poly));
  EXPECT_LE(e.width(), kTol);
}

TEST(ContinuedFraction, FiniteIsExact) {
  const ContinuedFraction cf = ContinuedFraction::parse("[0;2]");
  EXPECT_TRUE(cf.is_finite());
  EXPECT_EQ(cf_value(cf, kTol), Enclosure::exact(Rational(1, 2)));
}

TEST(ContinuedFraction, SilverRatio) {
  const Enclosure e = cf_value(ContinuedFraction::parse("[2;(2)]"), kTol);
  EXPECT_TRUE(oracle::encloses_root(e, [](const Rational& x) { return x * x - 2 * x - 1; }));
}

TEST(ContinuedFraction, NormalizesRepresentation) {
  EXPECT_EQ(ContinuedFraction::parse("[0;2,1]").str(), "[0;3]");
  EXPECT_EQ(ContinuedFraction::parse("[0;3,(1,2,1,2)]").str(), "[0;3,(1,2)]");
  EXPECT_EQ(ContinuedFraction::parse("[0;1,(2,1)]"), ContinuedFraction::parse("[0;(1,2)]"));
}

TEST(ContinuedFraction, RejectsMalformedInput) {
  for (const char* bad : {"[1;(0)]", "[1;2", "abc", "[1;2,(]", "[;1]", "[1;-2]"})
    EXPECT_THROW(ContinuedFraction::parse(bad), std::invalid_argument) << bad;
}

TEST(ContinuedFraction, ConvergentsBracketValue) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> digit(1, 5), len(0, 3);
  for (int t = 0; t < 30; ++t) {
    std::vector<Integer> pre, per;
    for (int i = len(rng); i > 0; --i) pre.emplace_back(digit(rng));
    for (int i = len(rng) + 1; i > 0; --i) per.emplace_back(digit(rng));
    const ContinuedFraction cf(digit(rng), pre, per);
    const QuadraticSurd v = cf_surd(cf);
    const std::vector<Rational> c = convergents(cf, 12);
    const Enclosure e = cf_value(cf, kTol);
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      const Rational lo = k % 2 == 0 ? c[k] : c[k + 1];
      const Rational hi = k % 2 == 0 ? c[k + 1] : c[k];
      EXPECT_LE(compare(QuadraticSurd::rational(lo), v), 0);
      EXPECT_GE(compare(QuadraticSurd::rational(hi), v), 0);
      EXPECT_TRUE(e.overlaps(Enclosure(lo, hi)));
    }
  }
}

TEST(ContinuedFraction, MonotoneRefinement) {
  for (const char* text : {"[1;(1)]", "[0;3,(1,2)]", "[4;1,1,(2,3,4)]"}) {
    const ContinuedFraction cf = ContinuedFraction::parse(text);
    Enclosure prev = cf_value(cf, Rational(1, 10));
    for (int k = 2; k <= 40; k += 3) {
      const Enclosure e = cf_value(cf, pow_rational(Rational(1, 10), static_cast<unsigned>(k)));
      EXPECT_TRUE(prev.contains(e)) << text << " at 1e-" << k;
      prev = e;
    }
  }
}

TEST(TailAndReversal, GoldenRatio) {
  const ContinuedFraction g = ContinuedFraction::parse("[1;(1)]");
  // β_5 = [0;1,1,1,1] = 3/5 with the digits a_4..a_1
  const auto [a5, b5] = tail_and_reversal(g, 5, kTol);
  EXPECT_TRUE(oracle::encloses_root(a5, golden_poly));
  EXPECT_TRUE(b5.contains(Rational(3, 5)));
  EXPECT_TRUE(tail_and_reversal(g, 6, kTol).second.contains(Rational(5, 8)));
}

TEST(TailAndReversal, SilverRatio) {
  const auto [a, b] = tail_and_reversal(ContinuedFraction::parse("[2;(2)]"), 3, kTol);
  EXPECT_TRUE(oracle::encloses_root(a, [](const Rational& x) { return x * x - 2 * x - 1; }));
  EXPECT_TRUE(b.contains(Rational(2, 5)));
}

TEST(TailAndReversal, ConstantWordTailIsFixed) {
  const ContinuedFraction c = ContinuedFraction::parse("[3;(3)]");
  const Enclosure first = tail_and_reversal(c, 1, kTol).first;
  for (std::size_t n = 2; n < 8; ++n) EXPECT_EQ(tail_and_reversal(c, n, kTol).first, first);
}

TEST(TailAndReversal, Errors) {
  EXPECT_THROW(tail_and_reversal(ContinuedFraction::parse("[0;2,3]"), 1, kTol), std::invalid_argument);
  EXPECT_THROW(tail_and_reversal(ContinuedFraction::parse("[1;(1)]"), 0, kTol), std::invalid_argument);
}

TEST(LagrangeValue, Examples) {
  EXPECT_TRUE(oracle::encloses_sqrt(lagrange_value(ContinuedFraction::parse("[1;(1)]"), kTol), 5));
  EXPECT_TRUE(oracle::encloses_sqrt(lagrange_value(ContinuedFraction::parse("[2;(2)]"), kTol), 8));
  EXPECT_EQ(lagrange_value(ContinuedFraction::parse("[1;(2,1)]"), kTol),
            lagrange_value(ContinuedFraction::parse("[1;(1,2)]"), kTol));
}

TEST(LagrangeValue, PreperiodIgnored) {
  EXPECT_EQ(lagrange_value(ContinuedFraction::parse("[7;5,3,(1)]"), kTol),
            lagrange_value(ContinuedFraction::parse("[1;(1)]"), kTol));
}

TEST(MarkovWord, Examples) {
  EXPECT_TRUE(oracle::encloses_sqrt(markov_value_word(digits({1}), kTol), 5));
  EXPECT_TRUE(oracle::encloses_sqrt(markov_value_word(digits({2}), kTol), 8));
  EXPECT_EQ(markov_value_exact(digits({1, 2})), markov_value_exact(digits({2, 1})));
}

TEST(MarkovWord, CandidatesAreRotationInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> digit(1, 4), len(1, 6);
  for (int t = 0; t < 50; ++t) {
    std::vector<Integer> w;
    for (int i = len(rng); i > 0; --i) w.emplace_back(digit(rng));
    std::vector<QuadraticSurd> base = markov_candidates(w);
    std::sort(base.begin(), base.end());
    for (std::size_t r = 1; r < w.size(); ++r) {
      std::vector<Integer> rot = w;
      std::rotate(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(r), rot.end());
      std::vector<QuadraticSurd> c = markov_candidates(rot);
      std::sort(c.begin(), c.end());
      EXPECT_EQ(c, base);
    }
  }
}

TEST(MarkovWord, AgreesWithLagrangeOnRandomWords) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> digit(1, 4), len(1, 6);
  for (int t = 0; t < 100; ++t) {
    std::vector<Integer> w;
    for (int i = len(rng); i > 0; --i) w.emplace_back(digit(rng));
    const Enclosure m = markov_value_word(w, kTol);
    const Enclosure l = lagrange_value(ContinuedFraction::periodic(w), kTol);
    EXPECT_TRUE(oracle::overlaps_within(m, l, 2 * kTol));
  }
}

TEST(QuadraticFormValue, Examples) {
  EXPECT_TRUE(oracle::encloses_sqrt(form_markov_value({1, 1, -1}, 100, kTol), 5));
  EXPECT_TRUE(oracle::encloses_sqrt(form_markov_value({1, 0, -2}, 100, kTol), 8));
}

TEST(QuadraticFormValue, ScalingInvariant) {
  const QuadraticSurd base = form_markov_surd({1, 1, -1}, 50);
  EXPECT_EQ(form_markov_surd({3, 3, -3}, 50), base);
  EXPECT_EQ(form_markov_surd({Rational(1, 2), Rational(1, 2), Rational(-1, 2)}, 50), base);
}

TEST(QuadraticFormValue, UnimodularSubstitutionInvariant) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> step(0, 3), shift(-2, 2);
  for (const QuadraticForm q : {QuadraticForm{1, 1, -1}, QuadraticForm{1, 0, -2}, QuadraticForm{1, 3, -1}}) {
    const QuadraticSurd base = form_markov_surd(q, 30);
    for (int t = 0; t < 20; ++t) {
      // [[1,a],[0,1]]·[[1,0],[b,1]], columns optionally swapped
      const Integer a = shift(rng), b = shift(rng);
      Integer p = 1 + a * b, qq = a, r = b, s = 1;
      if (step(rng) % 2) std::swap(p, qq), std::swap(r, s);
      ASSERT_EQ(abs(p * s - qq * r), 1);
      const QuadraticForm sub{q.a * p * p + q.b * p * r + q.c * r * r,
                              2 * q.a * p * qq + q.b * (p * s + qq * r) + 2 * q.c * r * s,
                              q.a * qq * qq + q.b * qq * s + q.c * s * s};
      // inverse entries are at most 5, so radius 300 covers the preimage of the original box
      EXPECT_EQ(form_markov_surd(sub, 300), base);
    }
  }
}

TEST(QuadraticFormValue, Errors) {
  EXPECT_THROW(form_markov_value({1, 0, 1}, 10, kTol), std::domain_error);   // definite
  EXPECT_THROW(form_markov_value({1, 0, -1}, 10, kTol), std::domain_error);  // represents zero
}

TEST(NamedConstants, Freiman) {
  const Enclosure f = freiman_constant(Rational(1, 10000000000LL));
  EXPECT_LE(f.width(), Rational(1, 10000000000LL));
  EXPECT_TRUE(f.overlaps(Enclosure(parse_rational("4.52782956616"), parse_rational("4.52782956617"))));
  const Enclosure coarse = freiman_constant(1);
  EXPECT_LE(coarse.width(), 1);
  EXPECT_TRUE(coarse.contains(f));
}

TEST(NamedConstants, HeightMap) {
  const Enclosure zero = height_map(Enclosure::exact(2));
  EXPECT_TRUE(zero.contains(Rational(0)));
  EXPECT_LT(zero.width(), parse_rational("1e-60"));

  // log(√5/2) from MPFR at 300 bits
  mpfr_t x;
  mpfr_init2(x, 300);
  mpfr_set_ui(x, 5, MPFR_RNDN);
  mpfr_sqrt(x, x, MPFR_RNDN);
  mpfr_div_ui(x, x, 2, MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  char* text = nullptr;
  mpfr_asprintf(&text, "%.60Rf", x);
  const Rational expected = parse_rational(text);
  mpfr_free_str(text);
  mpfr_clear(x);
  const QuadraticSurd r5(0, 1, 5, 1);
  const Enclosure h = height_map(r5.enclosure(parse_rational("1e-40")));
  EXPECT_TRUE(Enclosure(h.lo - parse_rational("1e-55"), h.hi + parse_rational("1e-55")).contains(expected));
  EXPECT_TRUE(oracle::near(expected, 0.111571775657104877, 1e-15));

  const Enclosure mu = height_map(freiman_constant(parse_rational("1e-25")));
  EXPECT_TRUE(Enclosure(parse_rational("0.8170955196503965975"), parse_rational("0.8170955196503965985")).contains(mu));
}
