#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frontier {

enum class ExperimentKind {
  cell_max_law,
  local_bias,
  variance,
  mise,
  supnorm,
  weibull,
  gumbel,
  gaussian,
  zn_moments,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);
const std::vector<ExperimentKind>& all_experiment_kinds();

struct ScheduleEntry {
  std::int64_t n;
  unsigned h_prime;
  std::uint64_t d_n;
  bool operator==(const ScheduleEntry&) const = default;
};

// Asymptotic conditions a schedule entry may be meant to approximate.
enum class Regime {
  k_small_vs_n_over_log_n,  // k_n = o(n / ln n)
  n_small_vs_k_pow,         // n = o(k_n^{1+α})
  h_small_vs_k,             // h_n = o(k_n)
  k_log_k_small_vs_n,       // k_n ln k_n = o(n)
  gauss_centered,           // n = o(k_n^{1/2+α} h_n^{1/2})
  gauss_corrected,          // n = o(k_n^{1/2} h_n^{1/2+α})
};

std::string_view to_string(Regime regime);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::local_bias;
  std::string frontier = "constant:1";
  std::vector<ScheduleEntry> schedule{{10000, 4, 4}};
  double c = 1.0;
  std::uint64_t replicates = 1000;
  std::uint64_t seed = 1;
  std::vector<double> xs{0.5};
  unsigned workers = 1;
  std::vector<double> eps{0.05, 0.1, 0.2};
  // gaussian only: all, centered, oracle_corrected or z_corrected.
  std::string variant = "all";
  std::vector<Regime> regimes;
};

// Flat "key = value" settings. Lines starting with '#' and blank lines are
// ignored. Later assignments of the same key win.
using Settings = std::vector<std::pair<std::string, std::string>>;

Settings parse_settings(std::istream& in);

// Applies one setting; throws std::invalid_argument for an unknown key or a
// malformed value. Recognised keys:
//   experiment, frontier, c, replicates, seed, workers, variant,
//   schedule  "n:hprime:dn;n:hprime:dn;..."
//   n, hprime, dn   override that field in every schedule entry
//   x, eps          comma-separated lists (replace the current list)
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);
void apply_settings(ExperimentConfig& cfg, const Settings& settings);

// Rejects empty schedules, non-positive c, zero replicates, x outside [0,1].
void validate(const ExperimentConfig& cfg);

// Canonical text form; parse_settings + apply_settings on it reproduces cfg.
std::string to_settings_text(const ExperimentConfig& cfg);
nlohmann::json to_json(const ExperimentConfig& cfg);

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

}  // namespace frontier
