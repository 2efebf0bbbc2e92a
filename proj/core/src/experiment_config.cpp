#include "frontier/experiment_config.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "frontier/numeric_format.hpp"

namespace frontier {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 9> kKindNames{{
    {ExperimentKind::cell_max_law, "cell_max_law"},
    {ExperimentKind::local_bias, "local_bias"},
    {ExperimentKind::variance, "variance"},
    {ExperimentKind::mise, "mise"},
    {ExperimentKind::supnorm, "supnorm"},
    {ExperimentKind::weibull, "weibull"},
    {ExperimentKind::gumbel, "gumbel"},
    {ExperimentKind::gaussian, "gaussian"},
    {ExperimentKind::zn_moments, "zn_moments"},
}};

constexpr std::array<std::string_view, 4> kVariants{"all", "centered", "oracle_corrected",
                                                    "z_corrected"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<double> parse_double_list(std::string_view value) {
  std::vector<double> out;
  for (auto part : split(value, ',')) {
    if (!part.empty()) out.push_back(parse_double(part));
  }
  return out;
}

std::vector<ScheduleEntry> parse_schedule(std::string_view value) {
  std::vector<ScheduleEntry> out;
  for (auto entry : split(value, ';')) {
    if (entry.empty()) continue;
    const auto fields = split(entry, ':');
    if (fields.size() != 3) {
      throw std::invalid_argument("schedule entry '" + std::string(entry) + "' is not n:hprime:dn");
    }
    out.push_back({parse_integer<std::int64_t>(fields[0]), parse_integer<unsigned>(fields[1]),
                   parse_integer<std::uint64_t>(fields[2])});
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(items[i]);
    } else {
      out += items[i];
    }
  }
  return out;
}

std::string schedule_text(const std::vector<ScheduleEntry>& schedule) {
  std::string out;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(schedule[i].n) + ':' + std::to_string(schedule[i].h_prime) + ':' +
           std::to_string(schedule[i].d_n);
  }
  return out;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> v;
    for (const auto& [k, name] : kKindNames) v.push_back(k);
    return v;
  }();
  return kinds;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::k_small_vs_n_over_log_n: return "k_n = o(n / ln n)";
    case Regime::n_small_vs_k_pow: return "n = o(k_n^(1+alpha))";
    case Regime::h_small_vs_k: return "h_n = o(k_n)";
    case Regime::k_log_k_small_vs_n: return "k_n ln k_n = o(n)";
    case Regime::gauss_centered: return "n = o(k_n^(1/2+alpha) h_n^(1/2))";
    case Regime::gauss_corrected: return "n = o(k_n^(1/2) h_n^(1/2+alpha))";
  }
  return "unknown";
}

Settings parse_settings(std::istream& in) {
  Settings out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(body.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    }
    out.emplace_back(std::string(key), std::string(trim(body.substr(eq + 1))));
  }
  return out;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  auto for_each_entry = [&](auto&& set) {
    if (cfg.schedule.empty()) cfg.schedule.push_back({1, 0, 1});
    for (auto& e : cfg.schedule) set(e);
  };
  if (key == "experiment") {
    const auto kind = parse_experiment_kind(value);
    if (!kind) throw std::invalid_argument("unknown experiment '" + std::string(value) + "'");
    cfg.kind = *kind;
  } else if (key == "frontier") {
    cfg.frontier = std::string(value);
  } else if (key == "c") {
    cfg.c = parse_double(value);
  } else if (key == "replicates") {
    cfg.replicates = parse_integer<std::uint64_t>(value);
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(value);
  } else if (key == "workers") {
    cfg.workers = parse_integer<unsigned>(value);
  } else if (key == "variant") {
    if (std::find(kVariants.begin(), kVariants.end(), value) == kVariants.end()) {
      throw std::invalid_argument("unknown gaussian variant '" + std::string(value) + "'");
    }
    cfg.variant = std::string(value);
  } else if (key == "schedule") {
    cfg.schedule = parse_schedule(value);
  } else if (key == "n") {
    const auto n = parse_integer<std::int64_t>(value);
    for_each_entry([&](ScheduleEntry& e) { e.n = n; });
  } else if (key == "hprime") {
    const auto h = parse_integer<unsigned>(value);
    for_each_entry([&](ScheduleEntry& e) { e.h_prime = h; });
  } else if (key == "dn") {
    const auto d = parse_integer<std::uint64_t>(value);
    for_each_entry([&](ScheduleEntry& e) { e.d_n = d; });
  } else if (key == "x") {
    cfg.xs = parse_double_list(value);
  } else if (key == "eps") {
    cfg.eps = parse_double_list(value);
  } else {
    throw std::invalid_argument("unknown setting '" + std::string(key) + "'");
  }
}

void apply_settings(ExperimentConfig& cfg, const Settings& settings) {
  for (const auto& [key, value] : settings) apply_setting(cfg, key, value);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.schedule.empty()) throw std::invalid_argument("config: schedule is empty");
  for (const auto& e : cfg.schedule) {
    if (e.n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (e.h_prime > 30) throw std::invalid_argument("config: hprime must be <= 30");
    if (e.d_n < 1) throw std::invalid_argument("config: dn must be >= 1");
  }
  if (!(cfg.c > 0.0)) throw std::invalid_argument("config: c must be > 0");
  if (cfg.replicates < 2) throw std::invalid_argument("config: replicates must be >= 2");
  if (cfg.xs.empty()) throw std::invalid_argument("config: at least one x is required");
  for (double x : cfg.xs) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("config: x must lie in [0, 1]");
  }
  for (double e : cfg.eps) {
    if (!(e > 0.0)) throw std::invalid_argument("config: eps values must be > 0");
  }
}

std::string to_settings_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "experiment = " << to_string(cfg.kind) << '\n'
      << "frontier = " << cfg.frontier << '\n'
      << "schedule = " << schedule_text(cfg.schedule) << '\n'
      << "c = " << format_double(cfg.c) << '\n'
      << "replicates = " << cfg.replicates << '\n'
      << "seed = " << cfg.seed << '\n'
      << "x = " << join(cfg.xs, ',') << '\n'
      << "eps = " << join(cfg.eps, ',') << '\n'
      << "variant = " << cfg.variant << '\n';
  return out.str();
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json schedule = nlohmann::json::array();
  for (const auto& e : cfg.schedule) {
    schedule.push_back({{"n", e.n}, {"hprime", e.h_prime}, {"dn", e.d_n}});
  }
  std::vector<std::string> regimes;
  for (auto r : cfg.regimes) regimes.emplace_back(to_string(r));
  return {{"experiment", to_string(cfg.kind)},
          {"frontier", cfg.frontier},
          {"schedule", schedule},
          {"c", cfg.c},
          {"replicates", cfg.replicates},
          {"seed", cfg.seed},
          {"x", cfg.xs},
          {"eps", cfg.eps},
          {"variant", cfg.variant},
          {"workers", cfg.workers},
          {"target_regimes", regimes}};
}

namespace {

ExperimentConfig make(ExperimentKind kind, std::string frontier, std::vector<ScheduleEntry> schedule,
                      std::uint64_t replicates, std::uint64_t seed, std::vector<double> xs,
                      std::vector<Regime> regimes) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.frontier = std::move(frontier);
  cfg.schedule = std::move(schedule);
  cfg.replicates = replicates;
  cfg.seed = seed;
  cfg.xs = std::move(xs);
  cfg.regimes = std::move(regimes);
  return cfg;
}

std::vector<Preset> build_presets() {
  using K = ExperimentKind;
  using R = Regime;
  std::vector<Preset> p;
  p.push_back({"cell_law_const", "exact law of one cell maximum, f = 1, n = 200, k_n = 16",
               make(K::cell_max_law, "constant:1", {{200, 4, 1}}, 10000, 11, {0.5}, {})});
  p.push_back({"bias_affine", "local bias of f_hat, f = 1 + x/2, n = 1e4, k_n = 64, h_n + 1 = 16",
               make(K::local_bias, "affine:1,0.5", {{10000, 4, 4}}, 2000, 12, {0.3, 0.7},
                    {R::k_small_vs_n_over_log_n, R::n_small_vs_k_pow})});
  p.push_back({"bias_const", "local bias against the closed-form constant-frontier correction",
               make(K::local_bias, "constant:1", {{1000, 3, 8}, {10000, 4, 4}}, 2000, 13, {0.5},
                    {R::k_small_vs_n_over_log_n})});
  p.push_back({"bias_sine", "local bias for a smooth non-monotone frontier",
               make(K::local_bias, "sine:1,0.25", {{10000, 4, 4}}, 2000, 14, {0.25, 0.6},
                    {R::k_small_vs_n_over_log_n, R::n_small_vs_k_pow})});
  p.push_back({"variance_const", "Var(f_hat(x)) against k_n h_n / (n c)^2, with n doubled",
               make(K::variance, "constant:1", {{4096, 4, 16}, {8192, 4, 16}}, 5000, 15, {0.5},
                    {R::k_small_vs_n_over_log_n, R::n_small_vs_k_pow})});
  p.push_back({"variance_geffroy", "d_n = 1 variance, comparator k_n^2 / (n c)^2",
               make(K::variance, "constant:1", {{4096, 8, 1}}, 5000, 16, {0.5},
                    {R::k_small_vs_n_over_log_n, R::n_small_vs_k_pow})});
  p.push_back({"mise_affine", "MISE orthogonal split and systematic part under h_n doubling",
               make(K::mise, "affine:1,0.5", {{10000, 2, 16}, {10000, 3, 8}, {10000, 4, 4}}, 1000,
                    17, {0.5}, {R::k_small_vs_n_over_log_n})});
  p.push_back({"mise_const", "MISE for a frontier inside every Haar span",
               make(K::mise, "constant:1", {{10000, 3, 8}}, 1000, 18, {0.5},
                    {R::k_small_vs_n_over_log_n})});
  p.push_back({"supnorm_const", "P(sup |f_hat - f| > eps) along a growing schedule",
               make(K::supnorm, "constant:1", {{2000, 4, 2}, {10000, 5, 2}, {100000, 7, 1}}, 500,
                    19, {0.5}, {R::k_small_vs_n_over_log_n})});
  p.push_back({"supnorm_twolevel", "sup-norm error stays above the jump floor for a discontinuous frontier",
               make(K::supnorm, "twolevel:1,1.5,0.3", {{2000, 4, 2}, {10000, 5, 2}, {100000, 7, 1}},
                    500, 20, {0.5}, {R::k_small_vs_n_over_log_n})});
  p.push_back({"weibull_const", "T_n(x) against the Weibull law, d_n = 1, n c / k_n = 4, 8, 16",
               make(K::weibull, "constant:1", {{2048, 9, 1}, {2048, 8, 1}, {2048, 7, 1}}, 5000, 21,
                    {0.5}, {R::n_small_vs_k_pow})});
  p.push_back({"gumbel_const", "normalised max deficit against the Gumbel law, d_n = 1",
               make(K::gumbel, "constant:1", {{20000, 7, 1}, {50000, 7, 1}}, 5000, 22, {0.5},
                    {R::k_log_k_small_vs_n})});
  p.push_back({"gaussian_const", "Gaussian limit of the three normalised variants, d_n = 64",
               make(K::gaussian, "constant:1", {{4096, 4, 64}}, 5000, 23, {0.5},
                    {R::h_small_vs_k, R::k_small_vs_n_over_log_n, R::gauss_corrected})});
  p.push_back({"gaussian_const_wide", "Gaussian limit with n c / k_n = 32, empty cells negligible",
               make(K::gaussian, "constant:1", {{32768, 4, 64}}, 5000, 24, {0.5},
                    {R::h_small_vs_k, R::k_small_vs_n_over_log_n, R::gauss_corrected})});
  p.push_back({"zn_moments_const", "mean and variance of the minima mean Z_n",
               make(K::zn_moments, "constant:1", {{10000, 4, 4}}, 2000, 25, {0.5},
                    {R::k_small_vs_n_over_log_n})});
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace frontier
