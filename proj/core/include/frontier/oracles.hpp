#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "frontier/frontier_spec.hpp"
#include "frontier/point_process.hpp"

namespace frontier {

// Exact law of the cell maximum X*_{n,r}.
//
// P(X* <= u) is the probability that no point of N*^n falls in the part of
// D_{n,r} above level u, i.e. exp(-n c ∫_{I_r} (f - u)^+). Below m_{n,r}
// that area is λ_{n,r} - u |I_r| in closed form; between m and M it is
// integrated numerically. Moments integrate the CDF, with the [0, m] part
// done analytically.
class CellMaxLaw {
 public:
  CellMaxLaw(FrontierSpec f, const PartitionConfig& cfg, std::size_t r, double c);

  double cdf(double u) const;
  // ∫_{I_r} (f - u)^+ for u >= 0.
  double exceedance_area(double u) const;
  double mean() const;
  double variance() const;

  struct Moments {
    double mean;
    double variance;
  };
  Moments moments() const;

  double lambda() const noexcept { return lambda_; }
  double m_cell() const noexcept { return m_; }
  double M_cell() const noexcept { return M_; }
  double rate() const noexcept { return nc_; }

 private:
  // {∫_0^M F(u) du, ∫_0^M 2 (M - u) F(u) du}
  std::pair<double, double> cdf_integrals() const;

  FrontierSpec f_;
  double lo_, hi_;
  double nc_;
  double lambda_, m_, M_;
};

double cell_cdf(const FrontierSpec& f, const PartitionConfig& cfg, std::size_t r, double c, double u);
double cell_max_mean(const FrontierSpec& f, const PartitionConfig& cfg, std::size_t r, double c);
double cell_max_variance(const FrontierSpec& f, const PartitionConfig& cfg, std::size_t r, double c);

enum class LimitLawKind { weibull_evd, gumbel, std_normal };

std::string_view to_string(LimitLawKind kind);

// weibull_evd: min(e^u, 1); gumbel: exp(-e^{-u}); std_normal: Φ(u).
double limit_cdf(LimitLawKind kind, double u);

struct LimitLaw {
  LimitLawKind kind;
  double cdf(double u) const { return limit_cdf(kind, u); }
};

// sup |F_N - F| over the sample, checking both sides of every jump of the
// empirical CDF (ties are grouped into a single jump).
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
double ks_statistic(std::span<const double> samples, LimitLaw law);

// 1% critical value of the one-sample Kolmogorov statistic, 1.63 / sqrt(N).
double ks_critical_1pct(std::size_t sample_size);

// Exact finite-n CDFs of the two d_n = 1 extreme-value statistics.
//   T_n(x) = (n c / k_n)(X*_{n,r} - k_n λ_{n,r})   for the cell law of x
//   W_n = (n c / k_n) max_r (M_{n,r} - X*_{n,r}) - ln k_n   over all cells
double weibull_statistic_cdf(const CellMaxLaw& cell, std::uint64_t k_n, double u);
double gumbel_statistic_cdf(std::span<const CellMaxLaw> cells, double u);

// sup_u |G(u) - L(u)| for a CDF G that is 0 below `lo`, 1 from `hi` on and
// continuous on (lo, hi), evaluated on an equispaced grid of `grid` points
// plus both one-sided limits at lo and hi.
double law_distance(const std::function<double(double)>& exact_cdf, LimitLaw law, double lo,
                    double hi, std::size_t grid = 4001);

struct Normalization {
  double sigma_n;        // k_n / (n c sqrt(d_n))
  std::size_t cell;      // r with x in I_{n,r} (0-based)
  double k_lambda;       // k_n λ_{n,r}, centring of T_n(x)
  double a_nr;           // m_{n,r} - k_n / (n c)
  double log_k;          // ln k_n, centring of the Gumbel statistic
  double scale;          // n c / k_n
};

Normalization normalizations(const FrontierSpec& f, const PartitionConfig& cfg, double c, double x);

}  // namespace frontier
