// frontier: simulate Poisson samples under a frontier, estimate it, and run
// the Monte Carlo validation experiments.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frontier/estimators.hpp"
#include "frontier/experiment_config.hpp"
#include "frontier/experiments.hpp"
#include "frontier/frontier_spec.hpp"
#include "frontier/numeric_format.hpp"
#include "frontier/point_process.hpp"
#include "frontier/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitTolerance = 2;

struct Options {
  std::string frontier;
  std::optional<std::int64_t> n;
  std::optional<double> c;
  std::optional<unsigned> hprime;
  std::optional<std::uint64_t> dn;
  std::optional<std::uint64_t> replicates;
  std::optional<std::uint64_t> seed;
  std::vector<double> xs;
  std::string out;
  std::optional<unsigned> workers;
  bool strict = false;
  std::string config;
  std::string schedule;
  std::vector<double> eps;
  std::string variant;
  std::string input;
  std::uint64_t stream = 0;
  std::string name;
};

void write_or_print(const std::string& dir, const std::string& file, const std::string& content) {
  if (dir.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / file).string());
  out << content;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += frontier::format_double(v[i]);
  }
  return s;
}

int run_simulate(const Options& o) {
  const auto f = frontier::parse_frontier(o.frontier.empty() ? "constant:1" : o.frontier);
  const auto sample =
      frontier::simulate(f, o.n.value_or(1000), o.c.value_or(1.0), o.seed.value_or(1), o.stream);
  std::ostringstream csv;
  frontier::write_sample_csv(csv, sample);
  write_or_print(o.out, "sample.csv", csv.str());
  return 0;
}

int run_estimate(const Options& o) {
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open sample file '" + o.input + "'");
  const auto sample = frontier::read_sample_csv(in);
  const auto label = o.frontier.empty() ? sample.frontier_label : o.frontier;
  const auto f = frontier::parse_frontier(label);
  const frontier::PartitionConfig part(sample.n, o.hprime.value_or(0), o.dn.value_or(1));
  const auto stats = frontier::cell_stats(sample, part, f);
  const auto bundle = frontier::corrected_estimate(stats, part);
  write_or_print(o.out, "estimate.json", frontier::to_json(bundle).dump(2) + "\n");
  return 0;
}

frontier::ExperimentConfig experiment_config(const Options& o, std::string& preset_name) {
  frontier::ExperimentConfig cfg;
  if (const auto* preset = frontier::find_preset(o.name)) {
    cfg = preset->config;
    preset_name = preset->name;
  } else if (const auto kind = frontier::parse_experiment_kind(o.name)) {
    cfg.kind = *kind;
  } else {
    throw std::invalid_argument("unknown experiment or preset '" + o.name + "' (see list-presets)");
  }
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw std::invalid_argument("cannot open config file '" + o.config + "'");
    frontier::apply_settings(cfg, frontier::parse_settings(in));
  }
  frontier::Settings flags;
  if (!o.frontier.empty()) flags.emplace_back("frontier", o.frontier);
  if (!o.schedule.empty()) flags.emplace_back("schedule", o.schedule);
  if (o.n) flags.emplace_back("n", std::to_string(*o.n));
  if (o.hprime) flags.emplace_back("hprime", std::to_string(*o.hprime));
  if (o.dn) flags.emplace_back("dn", std::to_string(*o.dn));
  if (o.c) flags.emplace_back("c", frontier::format_double(*o.c));
  if (o.replicates) flags.emplace_back("replicates", std::to_string(*o.replicates));
  if (o.seed) flags.emplace_back("seed", std::to_string(*o.seed));
  if (!o.xs.empty()) flags.emplace_back("x", join_doubles(o.xs));
  if (!o.eps.empty()) flags.emplace_back("eps", join_doubles(o.eps));
  if (o.workers) flags.emplace_back("workers", std::to_string(*o.workers));
  if (!o.variant.empty()) flags.emplace_back("variant", o.variant);
  frontier::apply_settings(cfg, flags);
  frontier::validate(cfg);
  return cfg;
}

int run_experiment_cmd(const Options& o) {
  std::string preset;
  const auto cfg = experiment_config(o, preset);
  const auto start = std::chrono::steady_clock::now();
  const auto report = frontier::run_experiment(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto csv = frontier::report_csv(report);
  const std::string stem = o.name;
  const std::string dir = o.out.empty() ? "." : o.out;
  write_or_print(dir, stem + ".csv", csv);
  write_or_print(dir, stem + ".manifest.json",
                 frontier::make_manifest(report, preset, csv, wall).dump(2) + "\n");
  std::size_t failed = 0;
  for (const auto& row : report.rows) {
    if (!row.pass) {
      ++failed;
      std::cerr << "FAIL " << row.statistic << " n=" << row.n << " k_n=" << row.k_n
                << (row.x ? " x=" + frontier::format_double(*row.x) : std::string())
                << " estimate=" << frontier::format_double(row.estimate)
                << " comparator=" << frontier::format_double(row.comparator)
                << " tolerance=" << frontier::format_double(row.tolerance) << "\n";
    }
  }
  std::cout << stem << ": " << report.rows.size() - failed << "/" << report.rows.size()
            << " checks passed, wrote " << (fs::path(dir) / (stem + ".csv")).string() << "\n";
  return o.strict && failed > 0 ? kExitTolerance : 0;
}

int run_list_presets() {
  for (const auto& p : frontier::presets()) {
    std::cout << p.name << "  [" << frontier::to_string(p.config.kind) << "]  " << p.description
              << "\n";
  }
  std::cout << "\nexperiments:";
  for (auto k : frontier::all_experiment_kinds()) std::cout << ' ' << frontier::to_string(k);
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson frontier estimation: simulation, Haar extreme-value estimates, experiments"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--frontier", o.frontier, "frontier label, e.g. constant:1, affine:1,0.5, sine:1,0.25, twolevel:1,1.5,0.3");
    cmd->add_option("--n", o.n, "number of superposed unit processes");
    cmd->add_option("--c", o.c, "intensity rate");
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--out", o.out, "output directory");
  };

  auto* simulate = app.add_subcommand("simulate", "draw a point sample and write it as CSV");
  add_common(simulate);
  simulate->add_option("--stream", o.stream, "Philox stream index");

  auto* estimate = app.add_subcommand("estimate", "estimate the frontier from a sample CSV");
  estimate->add_option("input", o.input, "sample CSV written by 'simulate'")->required();
  estimate->add_option("--frontier", o.frontier, "frontier for the oracle cell fields (default: sample label)");
  estimate->add_option("--hprime", o.hprime, "h' with h_n + 1 = 2^h'");
  estimate->add_option("--dn", o.dn, "cells per dyadic block");
  estimate->add_option("--out", o.out, "output directory");

  auto* experiment = app.add_subcommand("experiment", "run a named experiment or preset");
  experiment->add_option("name", o.name, "preset name or experiment kind")->required();
  add_common(experiment);
  experiment->add_option("--config", o.config, "key = value config file; flags override it");
  experiment->add_option("--hprime", o.hprime, "h' for every schedule entry");
  experiment->add_option("--dn", o.dn, "d_n for every schedule entry");
  experiment->add_option("--schedule", o.schedule, "n:hprime:dn;... schedule");
  experiment->add_option("--replicates", o.replicates, "Monte Carlo replicates per entry");
  experiment->add_option("--x", o.xs, "evaluation point (repeatable)");
  experiment->add_option("--eps", o.eps, "sup-norm thresholds (repeatable)");
  experiment->add_option("--variant", o.variant, "gaussian variant: all, centered, oracle_corrected, z_corrected");
  experiment->add_option("--workers", o.workers, "worker threads");
  experiment->add_flag("--strict", o.strict, "exit with status 2 if any check fails");

  auto* list = app.add_subcommand("list-presets", "list experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(o);
    if (*estimate) return run_estimate(o);
    if (*experiment) return run_experiment_cmd(o);
    if (*list) return run_list_presets();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
