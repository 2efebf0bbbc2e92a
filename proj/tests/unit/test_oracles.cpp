#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "frontier/frontier_spec.hpp"
#include "frontier/oracles.hpp"
#include "frontier/point_process.hpp"

using namespace frontier;

TEST(CellCdf, ConstantFrontierClosedForm) {
  const auto f = constant_frontier(1.0);
  const PartitionConfig p(100, 0, 10);
  EXPECT_NEAR(cell_cdf(f, p, 3, 1.0, 0.9), std::exp(-1.0), 1e-15);
  EXPECT_EQ(cell_cdf(f, p, 3, 1.0, 1.0), 1.0);
  EXPECT_EQ(cell_cdf(f, p, 3, 1.0, -1e-9), 0.0);
  EXPECT_NEAR(cell_cdf(f, p, 3, 1.0, 0.0), std::exp(-10.0), 1e-18);
  for (double u = 0.0; u <= 1.0; u += 1.0 / 64) {
    EXPECT_NEAR(cell_cdf(f, p, 0, 1.0, u), std::exp(10.0 * (u - 1.0)), 1e-12);
  }
}

TEST(CellCdf, NondecreasingForGeneralFrontiers) {
  for (const char* label : {"affine:1,0.5", "sine:1,0.25", "twolevel:1,1.5,0.3"}) {
    const auto f = parse_frontier(label);
    const PartitionConfig p(300, 2, 2);
    for (std::size_t r = 0; r < p.k_n(); ++r) {
      const CellMaxLaw law(f, p, r, 1.0);
      double prev = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double u = law.M_cell() * i / 200.0;
        const double v = law.cdf(u);
        ASSERT_GE(v, prev - 1e-15) << label << " r=" << r << " u=" << u;
        prev = v;
      }
      EXPECT_EQ(law.cdf(law.M_cell()), 1.0);
    }
  }
}

// Frozen with scipy.integrate.quad on the exceedance area of 1 + x/2 over
// [0.25, 0.5] with n c = 400.
TEST(CellCdf, AffineFrozenValues) {
  const auto f = affine_frontier(1.0, 0.5);
  const PartitionConfig p(400, 2, 1);
  const CellMaxLaw law(f, p, 1, 1.0);
  EXPECT_NEAR(law.cdf(1.13), 0.0031511115984444076, 1e-12);
  EXPECT_NEAR(law.cdf(1.2), 0.36787944117144145, 1e-12);
  EXPECT_NEAR(law.cdf(1.24), 0.9607894391523231, 1e-12);
  EXPECT_NEAR(law.mean(), 1.2056873817777611, 1e-10);
  EXPECT_NEAR(law.variance(), 0.0005367779571173498, 1e-10);
}

TEST(CellCdf, AffineMatchesMonteCarlo) {
  const auto f = affine_frontier(1.0, 0.5);
  const PartitionConfig p(400, 2, 1);
  const auto oracles = cell_oracles(f, p);
  const CellMaxLaw law(f, p, 1, 1.0);
  constexpr int kR = 20000;
  int below = 0;
  for (int r = 0; r < kR; ++r) below += simulate_cell_stats(f, 1.0, 3, r, p, oracles).x_star[1] <= 1.2;
  const double pr = law.cdf(1.2);
  EXPECT_NEAR(static_cast<double>(below) / kR, pr, 3.0 * std::sqrt(pr * (1 - pr) / kR));
}

TEST(CellMoments, ConstantFrontier) {
  const auto f = constant_frontier(1.0);
  EXPECT_NEAR(cell_max_mean(f, PartitionConfig(100, 0, 10), 0, 1.0), 0.9000045399929762, 1e-12);
  const double var = cell_max_variance(f, PartitionConfig(10000, 0, 64), 5, 1.0);
  EXPECT_NEAR(var / 4.096e-5, 1.0, 0.01);
  for (auto [n, k] : {std::pair{100, 10}, {1000, 16}, {50, 32}}) {
    const double beta = static_cast<double>(n) / k;
    const double closed = 1.0 - (1.0 - std::exp(-beta)) / beta;
    EXPECT_NEAR(cell_max_mean(f, PartitionConfig(n, 0, k), 0, 1.0), closed, 1e-10);
  }
  // Larger intensity pushes the mean to the frontier.
  EXPECT_NEAR(cell_max_mean(f, PartitionConfig(1000000, 0, 10), 0, 1.0), 1.0, 1e-4);
}

// 0 <= E X* - a_{n,r} <= (M - m) + k/(nc) <= C k^-alpha with
// C = L + k^2/(nc). n grows as k^2, so C is the same at every k. A C fitted
// at the smallest k is too tight for the sine frontier, whose cell slopes
// approach L only as the cells shrink.
TEST(CellMoments, MeanApproachesANrAtRateK) {
  for (const char* label : {"constant:1", "affine:1,0.5", "sine:1,0.25"}) {
    const auto f = parse_frontier(label);
    const double C = f.lipschitz() + 64.0 / 20000.0;
    double previous = 0.0;
    for (unsigned hp : {3u, 4u, 5u}) {
      const PartitionConfig p(std::int64_t{20000} << (2 * (hp - 3)), hp, 1);
      const double k = static_cast<double>(p.k_n());
      double worst = 0.0;
      for (std::size_t r = 0; r < p.k_n(); ++r) {
        const CellMaxLaw law(f, p, r, 1.0);
        const double a = law.m_cell() - k / law.rate();
        EXPECT_GE(law.mean() - a, -1e-12) << label << " k=" << k << " r=" << r;
        worst = std::max(worst, law.mean() - a);
      }
      const double scaled = worst * std::pow(k, f.alpha());
      EXPECT_LE(scaled, C + 1e-9) << label << " k=" << k;
      // The scaled error settles: it never moves by more than half its
      // previous value.
      if (hp > 3) EXPECT_LE(std::abs(scaled - previous), 0.5 * previous + 1e-12) << label;
      previous = scaled;
    }
  }
}

TEST(CellMoments, VarianceRatioApproachesOne) {
  const auto f = affine_frontier(1.0, 0.5);
  double last = 0.0;
  for (auto [n, hp] : {std::pair{4000, 5u}, {16000, 7u}, {64000, 9u}}) {
    const PartitionConfig p(n, hp, 1);
    const double k = static_cast<double>(p.k_n());
    const CellMaxLaw law(f, p, p.k_n() / 2, 1.0);
    last = law.variance() * n * n / (k * k);
  }
  EXPECT_GE(last, 0.9);
  EXPECT_LE(last, 1.1);
}

TEST(LimitCdf, Values) {
  EXPECT_EQ(limit_cdf(LimitLawKind::weibull_evd, 0.0), 1.0);
  EXPECT_EQ(limit_cdf(LimitLawKind::weibull_evd, 3.0), 1.0);
  EXPECT_NEAR(limit_cdf(LimitLawKind::weibull_evd, -1.0), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(limit_cdf(LimitLawKind::gumbel, 0.0), std::exp(-1.0), 1e-16);
  EXPECT_EQ(limit_cdf(LimitLawKind::std_normal, 0.0), 0.5);
  EXPECT_NEAR(limit_cdf(LimitLawKind::std_normal, 1.959963984540054), 0.975, 1e-12);
  EXPECT_NEAR(limit_cdf(LimitLawKind::std_normal, -3.0), 0.0013498980316300946, 1e-15);
}

TEST(LimitCdf, MonotoneWithLimits) {
  for (auto kind : {LimitLawKind::weibull_evd, LimitLawKind::gumbel, LimitLawKind::std_normal}) {
    double prev = 0.0;
    for (double u = -40.0; u <= 40.0; u += 0.01) {
      const double v = limit_cdf(kind, u);
      ASSERT_GE(v, prev);
      prev = v;
    }
    EXPECT_LT(limit_cdf(kind, -40.0), 1e-15);
    EXPECT_GT(limit_cdf(kind, 40.0), 1.0 - 1e-15);
  }
}

TEST(KsStatistic, StratifiedQuantiles) {
  constexpr int kN = 1000;
  std::vector<double> s;
  for (int i = 0; i < kN; ++i) s.push_back((2.0 * i + 1.0) / (2.0 * kN));
  const double d = ks_statistic(s, [](double u) { return std::clamp(u, 0.0, 1.0); });
  EXPECT_NEAR(d, 1.0 / (2.0 * kN), 1e-15);
  // Same construction through the Gumbel quantile function.
  std::vector<double> g;
  for (int i = 0; i < kN; ++i) g.push_back(-std::log(-std::log((2.0 * i + 1.0) / (2.0 * kN))));
  EXPECT_NEAR(ks_statistic(g, LimitLaw{LimitLawKind::gumbel}), 1.0 / (2.0 * kN), 1e-12);
}

TEST(KsStatistic, SingleSampleAndTotalMismatch) {
  const std::vector<double> one{0.0};
  EXPECT_DOUBLE_EQ(ks_statistic(one, LimitLaw{LimitLawKind::std_normal}), 0.5);
  const std::vector<double> far(10, -50.0);
  EXPECT_NEAR(ks_statistic(far, LimitLaw{LimitLawKind::std_normal}), 1.0, 1e-15);
  const std::vector<double> ties{0.5, 0.5, 0.5, 0.5};
  EXPECT_DOUBLE_EQ(ks_statistic(ties, [](double u) { return std::clamp(u, 0.0, 1.0); }), 0.5);
  EXPECT_THROW(ks_statistic(std::vector<double>{}, LimitLaw{LimitLawKind::gumbel}), std::invalid_argument);
}

TEST(Normalizations, Examples) {
  const auto f = constant_frontier(1.0);
  const auto a = normalizations(f, PartitionConfig(4096, 4, 16), 1.0, 0.3);
  EXPECT_DOUBLE_EQ(a.sigma_n, 1.0 / 64.0);
  const auto b = normalizations(f, PartitionConfig(100, 0, 10), 1.0, 0.55);
  EXPECT_DOUBLE_EQ(b.sigma_n, 0.1 / std::sqrt(10.0));
  EXPECT_DOUBLE_EQ(normalizations(f, PartitionConfig(100, 3, 1), 1.0, 0.55).sigma_n, 0.08);
  EXPECT_NEAR(b.a_nr, 0.9, 1e-15);
  EXPECT_EQ(b.cell, 5u);
  EXPECT_NEAR(b.k_lambda, 1.0, 1e-15);
  EXPECT_NEAR(b.log_k, std::log(10.0), 1e-15);
  EXPECT_DOUBLE_EQ(b.scale, 10.0);
}

TEST(StatisticLaws, WeibullDistanceIsTruncationMass) {
  const auto f = constant_frontier(1.0);
  const PartitionConfig p(2048, 9, 1);
  const CellMaxLaw cell(f, p, 100, 1.0);
  const double lo = -cell.rate() * cell.lambda();
  const double d = law_distance([&](double u) { return weibull_statistic_cdf(cell, p.k_n(), u); },
                                LimitLaw{LimitLawKind::weibull_evd}, lo, 0.0);
  EXPECT_NEAR(d, std::exp(-4.0), 1e-12);
}

TEST(StatisticLaws, GumbelExactProduct) {
  const auto f = constant_frontier(1.0);
  const PartitionConfig p(50000, 7, 1);
  std::vector<CellMaxLaw> cells;
  for (std::size_t r = 0; r < p.k_n(); ++r) cells.emplace_back(f, p, r, 1.0);
  EXPECT_NEAR(gumbel_statistic_cdf(cells, 0.5), 0.5444537695785061, 1e-12);
  EXPECT_EQ(gumbel_statistic_cdf(cells, -std::log(128.0) - 0.1), 0.0);
}
