#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "frontier/quadrature.hpp"
#include "frontier/rng.hpp"

using frontier::Philox4x64;

// Known answers from the Random123 kat_vectors file (philox4x64, 10 rounds).
TEST(Philox, ZeroKeyZeroCounter) {
  const auto out = Philox4x64::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x16554d9eca36314cULL);
  EXPECT_EQ(out[1], 0xdb20fe9d672d0fdcULL);
  EXPECT_EQ(out[2], 0xd7e772cee186176bULL);
  EXPECT_EQ(out[3], 0x7e68b68aec7ba23bULL);
}

TEST(Philox, PiDigitsKeyAndCounter) {
  const auto out = Philox4x64::block(
      {0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL},
      {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL});
  EXPECT_EQ(out[0], 0xa528f45403e61d95ULL);
  EXPECT_EQ(out[1], 0x38c72dbd566e9788ULL);
  EXPECT_EQ(out[2], 0xa5a1610e72fd18b5ULL);
  EXPECT_EQ(out[3], 0x57bd43b5e52b7fe6ULL);
}

TEST(Philox, StreamsAreReproducibleAndDistinct) {
  Philox4x64 a(7, 3), b(7, 3), c(7, 4);
  bool differs = false;
  for (int i = 0; i < 64; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs |= x != c();
  }
  EXPECT_TRUE(differs);
}

TEST(Philox, UniformInUnitInterval) {
  Philox4x64 g(1, 0);
  double sum = 0.0;
  constexpr int kN = 200000;
  for (int i = 0; i < kN; ++i) {
    const double u = g.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kN, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / kN));
}

TEST(Quadrature, Polynomials) {
  EXPECT_NEAR(frontier::integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(frontier::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0,
              1e-9);
  EXPECT_EQ(frontier::integrate([](double) { return 1.0; }, 0.5, 0.5), 0.0);
}

TEST(Quadrature, KinkedIntegrand) {
  const double v = frontier::integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0);
  EXPECT_NEAR(v, (0.09 + 0.49) / 2.0, 1e-10);
}

TEST(Quadrature, ReportsFailure) {
  frontier::QuadratureOptions opts;
  opts.max_subintervals = 4;
  opts.abs_tol = 1e-14;
  EXPECT_THROW(frontier::integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opts),
               frontier::QuadratureError);
}
