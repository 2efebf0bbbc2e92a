#pragma once

#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "frontier/experiment_config.hpp"
#include "frontier/frontier_spec.hpp"
#include "frontier/report.hpp"
#include "frontier/step_function.hpp"

namespace frontier {

struct ErrorMetrics {
  double l2;                       // ‖g - f‖_2
  double sup;                      // ‖g - f‖_∞
  std::vector<double> at_points;   // |g(x) - f(x)| at each requested x
};

// Errors of a step estimate against the true frontier. The L2 part
// integrates (v - f)^2 piece by piece (split at f's own breakpoints); the
// sup part uses the frontier's extrema over each piece, which are exact or a
// Lipschitz-certified enclosure.
ErrorMetrics error_metrics(const StepFunction& estimate, const FrontierSpec& f,
                           std::span<const double> xs = {});

// The ratios behind the asymptotic conditions at one schedule entry, e.g.
// k_n ln n / n for k_n = o(n / ln n). Conditions involving alpha are
// flagged vacuous when L = 0.
nlohmann::json regime_ratios(const ScheduleEntry& entry, const FrontierSpec& f,
                             const std::vector<Regime>& targets);

// Each experiment simulates `replicates` independent copies of N*^n per
// schedule entry. Replicate i of entry j uses Philox stream (j << 32) | i
// under the configured seed, and results are reduced in replicate order, so
// the report is identical for any worker count.
ExperimentReport cell_max_law_experiment(const ExperimentConfig& cfg);
ExperimentReport local_bias_experiment(const ExperimentConfig& cfg);
ExperimentReport variance_experiment(const ExperimentConfig& cfg);
ExperimentReport mise_experiment(const ExperimentConfig& cfg);
ExperimentReport supnorm_experiment(const ExperimentConfig& cfg);
// Require d_n = 1 in every schedule entry.
ExperimentReport weibull_experiment(const ExperimentConfig& cfg);
ExperimentReport gumbel_experiment(const ExperimentConfig& cfg);
// Requires d_n > 1 in every schedule entry.
ExperimentReport gaussian_experiment(const ExperimentConfig& cfg);
ExperimentReport zn_moments_experiment(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace frontier
