#include <gtest/gtest.h>

#include "frontier/step_function.hpp"

using frontier::StepFunction;

TEST(StepFunction, RejectsMalformedPartitions) {
  EXPECT_THROW(StepFunction({0.0, 0.5}, {1.0}), std::invalid_argument);
  EXPECT_THROW(StepFunction({0.0, 0.5, 0.5, 1.0}, {1.0, 2.0, 3.0}), std::invalid_argument);
  EXPECT_THROW(StepFunction({0.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST(StepFunction, LeftClosedPiecesAndClosedLastPiece) {
  const StepFunction f({0.0, 0.5, 1.0}, {1.0, 2.0});
  EXPECT_EQ(f(0.0), 1.0);
  EXPECT_EQ(f(0.4999), 1.0);
  EXPECT_EQ(f(0.5), 2.0);
  EXPECT_EQ(f(1.0), 2.0);
  EXPECT_THROW(f(1.5), std::domain_error);
  EXPECT_THROW(f(-0.1), std::domain_error);
}

TEST(StepFunction, ArithmeticOnCommonRefinement) {
  const StepFunction a({0.0, 0.5, 1.0}, {1.0, 3.0});
  const StepFunction b({0.0, 0.25, 1.0}, {2.0, 4.0});
  const auto s = a + b;
  EXPECT_EQ(s.pieces(), 3u);
  EXPECT_EQ(s(0.1), 3.0);
  EXPECT_EQ(s(0.3), 5.0);
  EXPECT_EQ(s(0.7), 7.0);
  const auto d = a - b;
  EXPECT_EQ(d(0.7), -1.0);
  EXPECT_EQ((2.0 * a)(0.7), 6.0);
  EXPECT_EQ(a.shifted(0.5)(0.1), 1.5);
}

TEST(StepFunction, ExactNorms) {
  const StepFunction a({0.0, 0.5, 1.0}, {1.0, -3.0});
  EXPECT_DOUBLE_EQ(a.integral(), -1.0);
  EXPECT_DOUBLE_EQ(a.l2_norm_squared(), 5.0);
  EXPECT_DOUBLE_EQ(a.sup_norm(), 3.0);
  const auto one = StepFunction::constant(1.0);
  EXPECT_DOUBLE_EQ(a.inner_product(one), -1.0);
}

TEST(StepFunction, UniformPieces) {
  const auto u = StepFunction::uniform({1.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(u.pieces(), 4u);
  EXPECT_EQ(u(0.25), 2.0);
  EXPECT_EQ(u(0.99), 4.0);
  EXPECT_DOUBLE_EQ(u.width(2), 0.25);
}
