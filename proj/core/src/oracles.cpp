#include "frontier/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "frontier/quadrature.hpp"

namespace frontier {

CellMaxLaw::CellMaxLaw(FrontierSpec f, const PartitionConfig& cfg, std::size_t r, double c)
    : f_(std::move(f)) {
  if (r >= cfg.k_n()) throw std::out_of_range("CellMaxLaw: cell index out of range");
  if (!(c > 0.0)) throw std::invalid_argument("CellMaxLaw: c must be > 0");
  lo_ = cfg.cell_lo(r);
  hi_ = cfg.cell_hi(r);
  nc_ = static_cast<double>(cfg.n()) * c;
  lambda_ = f_.integral(lo_, hi_);
  const auto e = f_.bounds(lo_, hi_);
  m_ = e.min;
  M_ = e.max;
}

double CellMaxLaw::exceedance_area(double u) const {
  if (u <= m_) return std::max(0.0, lambda_ - u * (hi_ - lo_));
  if (u >= M_) return 0.0;
  // The exponent is scaled by n c, so tighten the area tolerance to match.
  QuadratureOptions opts;
  opts.abs_tol = 1e-10 / std::max(1.0, nc_);
  return f_.integrate_piecewise([&](double x) { return std::max(f_(x) - u, 0.0); }, lo_, hi_, opts);
}

double CellMaxLaw::cdf(double u) const {
  if (u < 0.0) return 0.0;
  if (u >= M_) return 1.0;
  return std::exp(-nc_ * exceedance_area(u));
}

std::pair<double, double> CellMaxLaw::cdf_integrals() const {
  // On [0, m] F(u) = exp(-nc λ + β u) with β = nc |I_r|.
  const double beta = nc_ * (hi_ - lo_);
  const double g0 = std::exp(-nc_ * lambda_);
  const double gm = std::exp(-nc_ * (lambda_ - (hi_ - lo_) * m_));
  double first = (gm - g0) / beta;
  double second = 2.0 * (((M_ - m_) * gm - M_ * g0) / beta + (gm - g0) / (beta * beta));
  if (M_ > m_) {
    QuadratureOptions opts;
    opts.abs_tol = 1e-10;
    first += integrate([&](double u) { return cdf(u); }, m_, M_, opts);
    second += integrate([&](double u) { return 2.0 * (M_ - u) * cdf(u); }, m_, M_, opts);
  }
  return {first, second};
}

double CellMaxLaw::mean() const { return moments().mean; }

double CellMaxLaw::variance() const { return moments().variance; }

CellMaxLaw::Moments CellMaxLaw::moments() const {
  // Moments of the deficit M - X*, which stay small and avoid cancellation.
  const auto [d1, d2] = cdf_integrals();
  return {M_ - d1, std::max(0.0, d2 - d1 * d1)};
}

double cell_cdf(const FrontierSpec& f, const PartitionConfig& cfg, std::size_t r, double c, double u) {
  return CellMaxLaw(f, cfg, r, c).cdf(u);
}

double cell_max_mean(const FrontierSpec& f, const PartitionConfig& cfg, std::size_t r, double c) {
  return CellMaxLaw(f, cfg, r, c).mean();
}

double cell_max_variance(const FrontierSpec& f, const PartitionConfig& cfg, std::size_t r, double c) {
  return CellMaxLaw(f, cfg, r, c).variance();
}

std::string_view to_string(LimitLawKind kind) {
  switch (kind) {
    case LimitLawKind::weibull_evd: return "weibull_evd";
    case LimitLawKind::gumbel: return "gumbel";
    case LimitLawKind::std_normal: return "std_normal";
  }
  return "unknown";
}

double limit_cdf(LimitLawKind kind, double u) {
  switch (kind) {
    case LimitLawKind::weibull_evd: return u >= 0.0 ? 1.0 : std::exp(u);
    case LimitLawKind::gumbel: return std::exp(-std::exp(-u));
    case LimitLawKind::std_normal: return 0.5 * std::erfc(-u / std::numbers::sqrt2);
  }
  throw std::invalid_argument("limit_cdf: unknown law");
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double fv = cdf(sorted[i]);
    d = std::max({d, std::abs(fv - static_cast<double>(i) / n), std::abs(fv - static_cast<double>(j) / n)});
    i = j;
  }
  return d;
}

double ks_statistic(std::span<const double> samples, LimitLaw law) {
  return ks_statistic(samples, [law](double u) { return law.cdf(u); });
}

double ks_critical_1pct(std::size_t sample_size) {
  return 1.63 / std::sqrt(static_cast<double>(sample_size));
}

double weibull_statistic_cdf(const CellMaxLaw& cell, std::uint64_t k_n, double u) {
  const double k = static_cast<double>(k_n);
  return cell.cdf(k * cell.lambda() + (k / cell.rate()) * u);
}

double gumbel_statistic_cdf(std::span<const CellMaxLaw> cells, double u) {
  if (cells.empty()) throw std::invalid_argument("gumbel_statistic_cdf: no cells");
  const double k = static_cast<double>(cells.size());
  const double t = (k / cells.front().rate()) * (u + std::log(k));
  if (t < 0.0) return 0.0;
  double p = 1.0;
  for (const auto& cell : cells) {
    // P(M - X* <= t) = P(X* >= M - t); X* has no atom on (0, M].
    if (t >= cell.M_cell()) continue;
    p *= 1.0 - cell.cdf(cell.M_cell() - t);
  }
  return p;
}

double law_distance(const std::function<double(double)>& exact_cdf, LimitLaw law, double lo,
                    double hi, std::size_t grid) {
  if (!(hi >= lo) || grid < 2) throw std::invalid_argument("law_distance: bad grid");
  // Left of lo the exact CDF is 0; right of hi it is 1.
  double d = std::max(law.cdf(std::nextafter(lo, -HUGE_VAL)), 1.0 - law.cdf(hi));
  for (std::size_t i = 0; i < grid; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    d = std::max(d, std::abs(exact_cdf(u) - law.cdf(u)));
  }
  return d;
}

Normalization normalizations(const FrontierSpec& f, const PartitionConfig& cfg, double c, double x) {
  if (!(c > 0.0)) throw std::invalid_argument("normalizations: c must be > 0");
  const auto r = cfg.cell_of(x);
  const double k = static_cast<double>(cfg.k_n());
  const double nc = static_cast<double>(cfg.n()) * c;
  const double lo = cfg.cell_lo(r);
  const double hi = cfg.cell_hi(r);
  Normalization out{};
  out.sigma_n = k / (nc * std::sqrt(static_cast<double>(cfg.d_n())));
  out.cell = r;
  out.k_lambda = k * f.integral(lo, hi);
  out.a_nr = f.bounds(lo, hi).min - k / nc;
  out.log_k = std::log(k);
  out.scale = nc / k;
  return out;
}

}  // namespace frontier
