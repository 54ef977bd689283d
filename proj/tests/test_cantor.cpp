#include "dynspec/cantor.hpp"
#include "dynspec/cf_arith.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dynspec;

namespace {

const Rational kTol(1, 1000000000);

std::vector<RegularCantorSet> families() {
  return {middle_third(), affine_cantor({Rational(1, 2), Rational(1, 4)}), gauss_cantor(1), gauss_cantor(2),
          gauss_cantor(3)};
}

bool close(const DimBounds& b, double x, double tol) {
  return oracle::near(b.lower, x, tol) && oracle::near(b.upper, x, tol);
}

}  // namespace

TEST(RegularCantorSet, RejectsOverlappingPieces) {
  EXPECT_THROW(affine_cantor({Rational(2, 3), Rational(1, 2)}), std::invalid_argument);
  EXPECT_THROW(affine_cantor({Rational(1), Rational(0)}), std::invalid_argument);
  EXPECT_THROW(gauss_cantor(0), std::invalid_argument);
}

TEST(RegularCantorSet, BranchesExpand) {
  for (const RegularCantorSet& k : families()) {
    for (const auto& [a, b] : k.sft().pairs()) {
      const std::size_t i = k.sft().index_of(a), j = k.sft().index_of(b);
      EXPECT_GT(k.dmin(i, j), 1) << k.name();
      EXPECT_LE(k.dmin(i, j), k.dmax(i, j));
      EXPECT_TRUE(k.base(i).contains(k.piece(i, j)));
    }
  }
}

TEST(ConstructionLevel, MiddleThirdLevelTwo) {
  const CylinderCover c = construction_level(middle_third(), 2);
  ASSERT_EQ(c.cylinders.size(), 4u);
  for (const Cylinder& cyl : c.cylinders) EXPECT_EQ(cyl.interval.width(), Rational(1, 9));
}

TEST(ConstructionLevel, SingleDigitGauss) {
  const QuadraticSurd golden_inv(-1, 1, 5, 2);
  Rational prev = 2;
  for (unsigned n = 1; n <= 8; ++n) {
    const CylinderCover c = construction_level(gauss_cantor(1), n);
    ASSERT_EQ(c.cylinders.size(), 1u);
    const Enclosure& e = c.cylinders[0].interval;
    EXPECT_LE(compare(QuadraticSurd::rational(e.lo), golden_inv), 0);
    EXPECT_GE(compare(QuadraticSurd::rational(e.hi), golden_inv), 0);
    EXPECT_LT(e.width(), prev);
    prev = e.width();
  }
}

TEST(ConstructionLevel, GaussTwoInsideHull) {
  const CylinderCover c = construction_level(gauss_cantor(2), 3);
  ASSERT_EQ(c.cylinders.size(), 8u);
  // the hull is [[0;(2,1)], [0;(1,2)]] from the periodic expansions
  const Rational t(1, 1000000000000LL);
  const Enclosure lo = cf_value(ContinuedFraction::parse("[0;(2,1)]"), t);
  const Enclosure hi = cf_value(ContinuedFraction::parse("[0;(1,2)]"), t);
  Rational least = 1, greatest = 0;
  for (const Cylinder& cyl : c.cylinders) {
    EXPECT_GE(cyl.interval.lo, lo.lo);
    EXPECT_LE(cyl.interval.hi, hi.hi);
    least = std::min(least, cyl.interval.lo);
    greatest = std::max(greatest, cyl.interval.hi);
  }
  EXPECT_LE(least, lo.hi);
  EXPECT_GE(greatest, hi.lo);
}

TEST(ConstructionLevel, Nesting) {
  for (const RegularCantorSet& k : families()) {
    CylinderCover prev = construction_level(k, 1);
    for (unsigned n = 2; n <= 8; ++n) {
      const CylinderCover cur = construction_level(k, n);
      for (const Cylinder& c : cur.cylinders) {
        const Word parent(c.word.begin(), c.word.end() - 1);
        const auto it = std::find_if(prev.cylinders.begin(), prev.cylinders.end(),
                                     [&](const Cylinder& p) { return p.word == parent; });
        ASSERT_NE(it, prev.cylinders.end());
        EXPECT_TRUE(it->interval.contains(c.interval)) << k.name() << " level " << n;
      }
      prev = cur;
    }
  }
}

TEST(ConstructionLevel, LengthSandwich) {
  for (const RegularCantorSet& k : families()) {
    for (unsigned n = 1; n <= 6; ++n) {
      for (const Cylinder& c : construction_level(k, n).cylinders) {
        const Rational base = k.base(k.sft().index_of(c.word.back())).width();
        EXPECT_GE(c.interval.width() * c.dmax_product, base) << k.name();
        EXPECT_LE(c.interval.width() * c.dmin_product, base) << k.name();
      }
    }
  }
}

TEST(ConstructionLevel, Budget) {
  Budget small;
  small.cylinders = 100;
  EXPECT_THROW(construction_level(gauss_cantor(4), 4, small), BudgetError);
}

TEST(GaussHull, Endpoints) {
  const Enclosure h = gauss_hull(4);
  const Enclosure lo = cf_value(ContinuedFraction::parse("[0;(4,1)]"), Rational(1, 1000000000000LL));
  const Enclosure hi = cf_value(ContinuedFraction::parse("[0;(1,4)]"), Rational(1, 1000000000000LL));
  EXPECT_TRUE(oracle::overlaps_within(Enclosure::exact(h.lo), lo, Rational(1, 1000000000)));
  EXPECT_TRUE(oracle::overlaps_within(Enclosure::exact(h.hi), hi, Rational(1, 1000000000)));
  const Enclosure one = gauss_hull(1);
  EXPECT_TRUE(oracle::near(one.lo, (std::sqrt(5.0) - 1) / 2, 1e-9));
  EXPECT_TRUE(oracle::near(one.hi, (std::sqrt(5.0) - 1) / 2, 1e-9));
}

TEST(DimBounds, AffineMatchesMoranRoot) {
  const double mt = std::log(2.0) / std::log(3.0);
  const double golden = std::log((1 + std::sqrt(5.0)) / 2) / std::log(2.0);
  for (unsigned n = 2; n <= 6; ++n) {
    EXPECT_TRUE(close(dim_bounds(middle_third(), n, kTol), mt, 2e-9)) << n;
    const DimBounds a = dim_bounds(affine_cantor({Rational(1, 2), Rational(1, 4)}), n, kTol);
    EXPECT_TRUE(close(a, golden, 2e-9)) << n;
    EXPECT_TRUE(close(a, oracle::moran_root({0.5, 0.25}), 2e-9)) << n;
  }
  const DimBounds three = dim_bounds(affine_cantor({Rational(1, 5), Rational(1, 5), Rational(1, 5)}), 3, kTol);
  EXPECT_TRUE(close(three, std::log(3.0) / std::log(5.0), 2e-9));
}

TEST(DimBounds, SinglePoint) {
  for (unsigned n = 2; n <= 6; ++n) {
    const DimBounds b = dim_bounds(gauss_cantor(1), n, kTol);
    EXPECT_EQ(b.lower, 0);
    EXPECT_EQ(b.upper, 0);
  }
}

TEST(DimBounds, GaussTwoNestedAndShrinking) {
  std::optional<DimBounds> prev;
  for (unsigned n = 2; n <= 10; ++n) {
    const DimBounds b = dim_bounds(gauss_cantor(2), n, kTol);
    EXPECT_LE(b.lower, b.upper);
    if (prev) {
      EXPECT_GE(b.lower, prev->lower);
      EXPECT_LE(b.upper, prev->upper);
      EXPECT_LT(b.upper - b.lower, prev->upper - prev->lower);
    }
    prev = b;
  }
  EXPECT_GT(prev->lower, Rational(44, 100));
  EXPECT_LT(prev->upper, Rational(60, 100));
}

TEST(DimBounds, Errors) {
  EXPECT_THROW(dim_bounds(middle_third(), 1, kTol), std::invalid_argument);
  EXPECT_THROW(dim_bounds(middle_third(), 3, 0), std::invalid_argument);
}

TEST(CantorSum, PointPlusPoint) {
  const std::vector<Enclosure> cover = cantor_sum_cover(point_cantor(Rational(1, 3)), point_cantor(Rational(1, 3)), 4);
  ASSERT_EQ(cover.size(), 1u);
  EXPECT_EQ(cover[0], Enclosure::exact(Rational(2, 3)));
}

TEST(CantorSum, MiddleThirdPlusItself) {
  const std::vector<Enclosure> cover = cantor_sum_cover(middle_third(), middle_third(), 5);
  ASSERT_FALSE(cover.empty());
  EXPECT_EQ(cover.front().lo, 0);
  EXPECT_EQ(cover.back().hi, 2);
  for (std::size_t i = 1; i < cover.size(); ++i) EXPECT_LE(cover[i].lo - cover[i - 1].hi, 2 * pow_rational(Rational(1, 3), 5));
  const SumCheck check = sum_interval_check(cover, 0, 2, 0);
  EXPECT_TRUE(check.contained);
}

TEST(CantorSum, Symmetric) {
  const RegularCantorSet a = gauss_cantor(2), b = middle_third();
  EXPECT_EQ(cantor_sum_cover(a, b, 4), cantor_sum_cover(b, a, 4));
  const RegularCantorSet c = affine_cantor({Rational(1, 5), Rational(1, 4)});
  EXPECT_EQ(cantor_sum_cover(c, b, 4), cantor_sum_cover(b, c, 4));
}

TEST(CantorSum, CoverContainsBruteForceSums) {
  const RegularCantorSet a = gauss_cantor(2), b = affine_cantor({Rational(1, 5), Rational(1, 4)});
  const std::vector<Enclosure> cover = cantor_sum_cover(a, b, 3);
  for (const Cylinder& x : construction_level(a, 6).cylinders) {
    for (const Cylinder& y : construction_level(b, 6).cylinders) {
      const Rational s = x.interval.midpoint() + y.interval.midpoint();
      EXPECT_TRUE(std::any_of(cover.begin(), cover.end(), [&](const Enclosure& e) { return e.contains(s); }));
    }
  }
}

TEST(CantorSum, MergeKeepsGaps) {
  const auto merged =
      merge_intervals({{Rational(0), Rational(1)}, {Rational(1), Rational(2)}, {Rational(3), Rational(4)}});
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[0], Enclosure(0, 2));
  EXPECT_EQ(merged[1], Enclosure(3, 4));
}

TEST(SumIntervalCheck, GapDetected) {
  const std::vector<Enclosure> cover{{Rational(0), Rational(1, 2)}, {Rational(6, 10), Rational(1)}};
  const SumCheck c = sum_interval_check(cover, 0, 1, Rational(1, 100));
  EXPECT_FALSE(c.contained);
  ASSERT_TRUE(c.largest_gap.has_value());
  EXPECT_EQ(*c.largest_gap, Enclosure(Rational(1, 2), Rational(6, 10)));
}

TEST(SumIntervalCheck, EmptyTarget) {
  const std::vector<Enclosure> cover{{Rational(0), Rational(1)}};
  EXPECT_THROW(sum_interval_check(cover, Rational(1, 3), Rational(2, 3), Rational(1, 5)), std::invalid_argument);
}
