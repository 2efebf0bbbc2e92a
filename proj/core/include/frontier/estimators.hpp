#pragma once

#include <nlohmann/json.hpp>
#include <vector>

#include "frontier/point_process.hpp"
#include "frontier/step_function.hpp"

namespace frontier {

// f̂_n with its Haar coefficients and the minima-mean correction
// f̃_n = f̂_n + Z_n.
struct EstimateBundle {
  StepFunction f_hat;
  StepFunction f_tilde;
  double z_n;
  std::vector<double> coefficients;
  PartitionConfig cfg;
};

// Block means of the cell maxima: on the dyadic block J_ℓ the value is
// (1/d_n) Σ X*_{n,r} over the d_n cells whose centres lie in J_ℓ.
StepFunction haar_ev_estimate(const CellStats& stats, const PartitionConfig& cfg);

// The same estimator through the Dirichlet kernel,
// Σ_r K_n(x_r, x) X*_{n,r} / k_n. O(k_n) per point; kept as a cross-check.
double haar_ev_kernel_form(const CellStats& stats, const PartitionConfig& cfg, double x);

// Geffroy's cellwise-maximum histogram; requires d_n = 1.
StepFunction geffroy_estimate(const CellStats& stats, const PartitionConfig& cfg);

// â_{i,k_n} = Σ_r e_i(x_r) X*_{n,r} / k_n for i = 0..h_n.
std::vector<double> coefficient_estimates(const CellStats& stats, const PartitionConfig& cfg);

// Z_n = (1/k_n) Σ_r Z*_{n,r}.
double minima_mean(const CellStats& stats);

EstimateBundle corrected_estimate(const CellStats& stats, const PartitionConfig& cfg);

// f̌_n = f̂_n + k_n / (n c). Needs the true intensity, so only usable in
// simulation.
StepFunction oracle_corrected_estimate(const CellStats& stats, const PartitionConfig& cfg, double c);

// Y_{n,r} = X*_{n,r} / k_n - λ_{n,r}.
std::vector<double> residuals(const CellStats& stats);

nlohmann::json to_json(const StepFunction& f);
nlohmann::json to_json(const EstimateBundle& bundle);

}  // namespace frontier
