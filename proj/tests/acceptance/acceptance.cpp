// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. argv[1] is the frontier CLI (for AC10), argv[2] a scratch
// directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "frontier/estimators.hpp"
#include "frontier/experiment_config.hpp"
#include "frontier/experiments.hpp"
#include "frontier/frontier_spec.hpp"
#include "frontier/haar.hpp"
#include "frontier/numeric_format.hpp"
#include "frontier/point_process.hpp"
#include "frontier/report.hpp"
#include "frontier/rng.hpp"

namespace fs = std::filesystem;
using namespace frontier;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(double v) { return format_double(v); }

ExperimentReport run_preset(const std::string& name) {
  const auto* p = find_preset(name);
  if (!p) throw std::runtime_error("missing preset " + name);
  auto cfg = p->config;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  return run_experiment(cfg);
}

const ReportRow& row(const ExperimentReport& r, const std::string& stat, std::optional<double> x = {},
                     std::size_t entry = 0) {
  const auto* found = r.find(stat, x, entry);
  if (!found) throw std::runtime_error("report has no row " + stat);
  return *found;
}

void require_row(Outcome& o, const ReportRow& r, const std::string& label) {
  o.require(r.pass, label + " " + fmt(r.estimate) + " vs " + fmt(r.comparator) + " tol " + fmt(r.tolerance));
}

Outcome ac1_haar_algebra() {
  Outcome o;
  double ortho = 0.0;
  std::vector<StepFunction> e;
  for (std::uint64_t i = 0; i < 64; ++i) e.push_back(haar_function(i));
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j)
      ortho = std::max(ortho, std::abs(e[i].inner_product(e[j]) - (i == j ? 1.0 : 0.0)));
  o.require(ortho <= 1e-12, "orthonormality " + fmt(ortho));

  Philox4x64 g(101, 0);
  double kernel = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::uint64_t h = (std::uint64_t{1} << (1 + t % 8)) - 1;
    const double x = g.uniform();
    const double y = g.uniform();
    kernel = std::max(kernel, std::abs(dirichlet_kernel(h, x, y) - dirichlet_kernel_sum(h, x, y)));
  }
  o.require(kernel <= 1e-12, "kernel " + fmt(kernel));

  const auto f = parse_frontier("sine:1,0.25");
  const PartitionConfig part(10000, 4, 4);
  const auto stats = simulate_cell_stats(f, 1.0, 7, 0, part, cell_oracles(f, part));
  const auto fhat = haar_ev_estimate(stats, part);
  const auto a = coefficient_estimates(stats, part);
  double recon = 0.0;
  for (std::size_t t = 0; t < 2000; ++t) {
    const double x = g.uniform();
    double s = 0.0;
    for (std::uint64_t i = 0; i < a.size(); ++i) s += a[i] * haar_eval(i, x);
    recon = std::max(recon, std::abs(s - fhat(x)));
  }
  o.require(recon <= 1e-12, "reconstruction " + fmt(recon));
  return o;
}

Outcome ac2_cell_law() {
  Outcome o;
  const auto r = run_preset("cell_law_const");
  require_row(o, row(r, "ks_cell_law", 0.5), "KS");
  return o;
}

Outcome ac3_bias() {
  Outcome o;
  const auto r = run_preset("bias_affine");
  for (double x : {0.3, 0.7}) require_row(o, row(r, "bias_residual_bound", x), "x=" + fmt(x));
  return o;
}

Outcome ac4_variance() {
  Outcome o;
  const auto r = run_preset("variance_const");
  require_row(o, row(r, "variance_ratio", 0.5, 0), "ratio");
  return o;
}

Outcome ac5_mise() {
  Outcome o;
  const auto r = run_preset("mise_affine");
  for (std::size_t e = 0; e < r.config.schedule.size(); ++e)
    require_row(o, row(r, "mise_split_residual", {}, e), "split[" + std::to_string(e) + "]");
  for (std::size_t e = 1; e < r.config.schedule.size(); ++e)
    require_row(o, row(r, "mise_systematic_ratio", {}, e), "ratio[" + std::to_string(e) + "]");
  return o;
}

Outcome ac6_weibull() {
  Outcome o;
  const auto r = run_preset("weibull_const");
  require_row(o, row(r, "ks_weibull", 0.5, 0), "KS");
  return o;
}

Outcome ac7_gumbel() {
  Outcome o;
  const auto r = run_preset("gumbel_const");
  require_row(o, row(r, "ks_gumbel", {}, r.config.schedule.size() - 1), "KS");
  return o;
}

Outcome ac8_gaussian() {
  Outcome o;
  const auto r = run_preset("gaussian_const");
  require_row(o, row(r, "ks_z_corrected", 0.5), "KS z-corrected");
  require_row(o, row(r, "mean_raw", 0.5), "uncorrected mean");
  return o;
}

Outcome ac9_zn() {
  Outcome o;
  const auto r = run_preset("zn_moments_const");
  require_row(o, row(r, "zn_mean"), "mean");
  require_row(o, row(r, "zn_variance_ratio"), "variance ratio");
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac10_reproducibility(const std::string& cli, const fs::path& scratch) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "no CLI path given");
    return o;
  }
  const std::string preset = "zn_moments_const";
  std::vector<std::string> csv;
  for (int workers : {1, 8}) {
    const auto dir = scratch / ("workers" + std::to_string(workers));
    fs::remove_all(dir);
    const std::string cmd = "\"" + cli + "\" experiment " + preset + " --workers " + std::to_string(workers) +
                            " --out \"" + dir.string() + "\" > \"" + (scratch / "cli.log").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    o.require(status == 0, "workers=" + std::to_string(workers) + " exit " + std::to_string(status));
    csv.push_back(slurp(dir / (preset + ".csv")));
  }
  o.require(!csv[0].empty() && csv[0] == csv[1],
            "byte-identical CSVs (" + std::to_string(csv[0].size()) + " bytes)");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "frontier_acceptance";
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 Haar algebra", ac1_haar_algebra},
      {"AC2 exact cell-max law", ac2_cell_law},
      {"AC3 local bias", ac3_bias},
      {"AC4 local variance", ac4_variance},
      {"AC5 MISE decomposition", ac5_mise},
      {"AC6 Weibull limit", ac6_weibull},
      {"AC7 Gumbel limit", ac7_gumbel},
      {"AC8 Gaussian limit", ac8_gaussian},
      {"AC9 Z_n moments", ac9_zn},
      {"AC10 reproducibility", [&] { return ac10_reproducibility(cli, scratch); }},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::printf("%-26s %s  (%.1fs)  %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
