#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frontier/experiment_config.hpp"

namespace frontier {

// One comparison of a Monte Carlo (or exact) quantity against its oracle.
// How `comparator` and `tolerance` combine into `pass` depends on the
// statistic and is spelled out in ExperimentReport::checks.
struct ReportRow {
  std::string experiment;
  std::string frontier;
  std::int64_t n = 0;
  double c = 0.0;
  std::uint64_t h_n = 0;
  std::uint64_t d_n = 0;
  std::uint64_t k_n = 0;
  std::optional<double> x;
  std::string statistic;
  double estimate = 0.0;
  double std_err = 0.0;
  double comparator = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  // Per schedule entry: the asymptotic-condition ratios it was run at.
  nlohmann::json regimes = nlohmann::json::array();
  // statistic name -> oracle and pass rule.
  std::map<std::string, std::string> checks;

  bool all_pass() const;
  // First row with the given statistic (and x, if given) at schedule entry
  // `entry` counted by distinct (n, h_n, d_n); nullptr if absent.
  const ReportRow* find(std::string_view statistic, std::optional<double> x = std::nullopt,
                        std::size_t entry = 0) const;
};

inline constexpr std::string_view kReportHeader =
    "experiment,frontier,n,c,h_n,d_n,k_n,x,statistic,estimate,std_err,comparator,tolerance,pass";

void write_report_csv(std::ostream& out, const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);

// SHA-1 of "blob <size>\0<content>", as printed by `git hash-object`.
std::string git_blob_hash(std::string_view content);

nlohmann::json make_manifest(const ExperimentReport& report, std::string_view preset,
                             std::string_view csv_text, double wall_seconds);

}  // namespace frontier
