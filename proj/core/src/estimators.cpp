#include "frontier/estimators.hpp"

#include <stdexcept>

#include "frontier/haar.hpp"

namespace frontier {

namespace {

void require_match(const CellStats& stats, const PartitionConfig& cfg) {
  if (stats.size() != cfg.k_n()) {
    throw std::invalid_argument("cell statistics were not produced under this partition");
  }
}

}  // namespace

StepFunction haar_ev_estimate(const CellStats& stats, const PartitionConfig& cfg) {
  require_match(stats, cfg);
  const auto d = cfg.d_n();
  std::vector<double> vals(cfg.blocks(), 0.0);
  for (std::size_t r = 0; r < stats.size(); ++r) vals[cfg.block_of_cell(r)] += stats.x_star[r];
  for (auto& v : vals) v /= static_cast<double>(d);
  return StepFunction::uniform(std::move(vals));
}

double haar_ev_kernel_form(const CellStats& stats, const PartitionConfig& cfg, double x) {
  require_match(stats, cfg);
  const double k = static_cast<double>(cfg.k_n());
  double s = 0.0;
  for (std::size_t r = 0; r < stats.size(); ++r) {
    s += dirichlet_kernel(cfg.h_n(), cfg.cell_center(r), x) * stats.x_star[r];
  }
  return s / k;
}

StepFunction geffroy_estimate(const CellStats& stats, const PartitionConfig& cfg) {
  if (cfg.d_n() != 1) throw std::invalid_argument("geffroy_estimate: requires d_n = 1");
  return haar_ev_estimate(stats, cfg);
}

std::vector<double> coefficient_estimates(const CellStats& stats, const PartitionConfig& cfg) {
  require_match(stats, cfg);
  const double k = static_cast<double>(cfg.k_n());
  std::vector<double> a(cfg.h_n() + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t r = 0; r < stats.size(); ++r) {
      s += haar_eval(i, cfg.cell_center(r)) * stats.x_star[r];
    }
    a[i] = s / k;
  }
  return a;
}

double minima_mean(const CellStats& stats) {
  if (stats.size() == 0) return 0.0;
  double s = 0.0;
  for (double z : stats.z_star) s += z;
  return s / static_cast<double>(stats.size());
}

EstimateBundle corrected_estimate(const CellStats& stats, const PartitionConfig& cfg) {
  auto f_hat = haar_ev_estimate(stats, cfg);
  const double z = minima_mean(stats);
  auto f_tilde = f_hat.shifted(z);
  return EstimateBundle{std::move(f_hat), std::move(f_tilde), z,
                        coefficient_estimates(stats, cfg), cfg};
}

StepFunction oracle_corrected_estimate(const CellStats& stats, const PartitionConfig& cfg, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("oracle_corrected_estimate: c must be > 0");
  const double shift = static_cast<double>(cfg.k_n()) / (static_cast<double>(cfg.n()) * c);
  return haar_ev_estimate(stats, cfg).shifted(shift);
}

std::vector<double> residuals(const CellStats& stats) {
  const double k = static_cast<double>(stats.size());
  std::vector<double> y(stats.size());
  for (std::size_t r = 0; r < y.size(); ++r) y[r] = stats.x_star[r] / k - stats.lambda[r];
  return y;
}

nlohmann::json to_json(const StepFunction& f) {
  return {{"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
          {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

nlohmann::json to_json(const EstimateBundle& b) {
  return {{"partition",
           {{"n", b.cfg.n()},
            {"h_prime", b.cfg.h_prime()},
            {"h_n", b.cfg.h_n()},
            {"d_n", b.cfg.d_n()},
            {"k_n", b.cfg.k_n()}}},
          {"coefficients", b.coefficients},
          {"f_hat", to_json(b.f_hat)},
          {"f_tilde", to_json(b.f_tilde)},
          {"z_n", b.z_n}};
}

}  // namespace frontier
