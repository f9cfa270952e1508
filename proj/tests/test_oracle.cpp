#include <gtest/gtest.h>

#include "degpart/generators.hpp"
#include "degpart/oracle.hpp"

using namespace degpart;

TEST(Oracle, CompleteGraphOnFour) {
  auto g = gen_complete(4);
  auto own = best_bisection(g, Objective::min_own_degree);
  auto cross = best_bisection(g, Objective::min_cross_degree);
  auto ratio = best_bisection(g, Objective::min_cross_ratio);
  EXPECT_EQ(own.value, (Fraction{1, 1}));
  EXPECT_EQ(cross.value, (Fraction{2, 1}));
  EXPECT_EQ(ratio.value, (Fraction{2, 3}));
  EXPECT_EQ(own.bisections, 6u);
  EXPECT_TRUE(own.witness.is_bisection());
  EXPECT_EQ(objective_value(g, own.witness, Objective::min_own_degree), own.value);
}

TEST(Oracle, PetersenCross) {
  auto g = gen_petersen();
  auto r = best_bisection(g, Objective::min_cross_degree);
  EXPECT_EQ(r.bisections, 252u);
  EXPECT_EQ(objective_value(g, r.witness, Objective::min_cross_degree), r.value);
  EXPECT_GE(r.value.num, 1);
}

TEST(Oracle, RefusesLargeInput) {
  EXPECT_THROW(best_bisection(gen_cycle(25), Objective::min_own_degree), std::invalid_argument);
  EXPECT_THROW(ko_bisection_exists(6, 3, 1), std::invalid_argument);
}

TEST(Oracle, ObjectiveNames) {
  EXPECT_EQ(objective_from_string("min-cross-ratio"), Objective::min_cross_ratio);
  EXPECT_STREQ(to_string(Objective::min_own_degree), "min-own-degree");
  EXPECT_THROW(objective_from_string("max"), std::invalid_argument);
}

TEST(Oracle, FractionOrdering) {
  EXPECT_TRUE((Fraction{1, 3}) < (Fraction{1, 2}));
  EXPECT_TRUE((Fraction{2, 4}) == (Fraction{1, 2}));
}

// Regression values from tests/oracles/ko_bisection.py (independent brute force).
TEST(Oracle, KuhnOsthusSmallCases) {
  auto a = ko_bisection_exists(4, 2, 1);
  EXPECT_FALSE(a.exists);
  EXPECT_EQ(a.vertices, 10);
  auto b = ko_bisection_exists(5, 2, 1);
  EXPECT_FALSE(b.exists);
  EXPECT_EQ(b.vertices, 15);
  auto c = ko_bisection_exists(4, 2, 0);
  EXPECT_TRUE(c.exists);
  ASSERT_TRUE(c.witness);
}

TEST(Oracle, DenseFixedPoint) {
  auto g = gen_petersen();
  ClassFamily f;
  f.host.assign(10, 1);
  f.host[9] = 0;
  f.classes = {{{0, 1, 2, 3, 4}, 3, 1.0}, {{5, 6, 7}, 2, 1.0}};
  EXPECT_TRUE(dense_fixed_point_check(g, f));
}
