#include "frontier/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "frontier/numeric_format.hpp"

namespace frontier {

bool ExperimentReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

const ReportRow* ExperimentReport::find(std::string_view statistic, std::optional<double> x,
                                        std::size_t entry) const {
  std::size_t seen = 0;
  std::tuple<std::int64_t, std::uint64_t, std::uint64_t> current{-1, 0, 0};
  for (const auto& row : rows) {
    const std::tuple key{row.n, row.h_n, row.d_n};
    if (key != current) {
      if (std::get<0>(current) != -1) ++seen;
      current = key;
    }
    if (seen != entry || row.statistic != statistic) continue;
    if (x && (!row.x || *row.x != *x)) continue;
    return &row;
  }
  return nullptr;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << kReportHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.experiment << ',' << r.frontier << ',' << r.n << ',' << format_double(r.c) << ','
        << r.h_n << ',' << r.d_n << ',' << r.k_n << ',' << (r.x ? format_double(*r.x) : "") << ','
        << r.statistic << ',' << format_double(r.estimate) << ',' << format_double(r.std_err) << ','
        << format_double(r.comparator) << ',' << format_double(r.tolerance) << ','
        << (r.pass ? "true" : "false") << '\n';
  }
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  write_report_csv(out, report);
  return out.str();
}

std::string git_blob_hash(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob += '\0';
  blob.append(content);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1) {
    throw std::runtime_error("git_blob_hash: SHA-1 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

nlohmann::json make_manifest(const ExperimentReport& report, std::string_view preset,
                             std::string_view csv_text, double wall_seconds) {
  const auto settings = to_settings_text(report.config);
  std::size_t passed = 0;
  for (const auto& r : report.rows) passed += r.pass ? 1 : 0;
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& [name, rule] : report.checks) checks[name] = rule;
  return {{"experiment", to_string(report.config.kind)},
          {"preset", preset},
          {"config", to_json(report.config)},
          {"config_text", settings},
          {"input_hash", git_blob_hash(settings)},
          {"output_hash", git_blob_hash(csv_text)},
          {"wall_time_seconds", wall_seconds},
          {"regimes", report.regimes},
          {"checks", checks},
          {"rows", report.rows.size()},
          {"passed", passed},
          {"failed", report.rows.size() - passed}};
}

}  // namespace frontier
