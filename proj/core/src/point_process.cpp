#include "frontier/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "frontier/numeric_format.hpp"
#include "frontier/rng.hpp"

namespace frontier {

PartitionConfig::PartitionConfig(std::int64_t n, unsigned h_prime, std::uint64_t d_n)
    : n_(n), h_prime_(h_prime), d_n_(d_n) {
  if (n < 1) throw std::invalid_argument("PartitionConfig: n must be >= 1");
  if (h_prime > 30) throw std::invalid_argument("PartitionConfig: h' must be <= 30");
  if (d_n < 1 || d_n > (std::uint64_t{1} << 24)) {
    throw std::invalid_argument("PartitionConfig: d_n must be in [1, 2^24]");
  }
}

std::size_t PartitionConfig::block_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("PartitionConfig: x outside [0, 1]");
  const auto b = blocks();
  return static_cast<std::size_t>(std::min(static_cast<std::uint64_t>(x * static_cast<double>(b)), b - 1));
}

std::size_t PartitionConfig::cell_of(double x) const {
  // x * 2^{h'} is exact, so the block found here always agrees with the
  // dyadic block of x; the offset inside the block is clamped.
  const auto block = block_of(x);
  const double within = x * static_cast<double>(blocks()) - static_cast<double>(block);
  const auto sub = std::min(static_cast<std::uint64_t>(within * static_cast<double>(d_n_)), d_n_ - 1);
  return block * d_n_ + sub;
}

double PartitionConfig::cell_center(std::size_t r) const noexcept {
  return (2.0 * static_cast<double>(r) + 1.0) / (2.0 * static_cast<double>(k_n()));
}

double PartitionConfig::cell_lo(std::size_t r) const noexcept {
  return static_cast<double>(r) / static_cast<double>(k_n());
}

double PartitionConfig::cell_hi(std::size_t r) const noexcept {
  return r + 1 == k_n() ? 1.0 : static_cast<double>(r + 1) / static_cast<double>(k_n());
}

double area(const FrontierSpec& f) { return f.area(); }

CellOracles cell_oracles(const FrontierSpec& f, const PartitionConfig& cfg) {
  const auto k = static_cast<std::size_t>(cfg.k_n());
  CellOracles o;
  o.lambda.resize(k);
  o.m_cell.resize(k);
  o.M_cell.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    const double lo = cfg.cell_lo(r);
    const double hi = cfg.cell_hi(r);
    o.lambda[r] = f.integral(lo, hi);
    const auto e = f.bounds(lo, hi);
    o.m_cell[r] = e.min;
    o.M_cell[r] = e.max;
  }
  return o;
}

namespace {

constexpr double kMaxRejectionRatio = 1e6;

// Shared draw sequence for simulate() and simulate_cell_stats().
template <class Sink>
void draw_points(const FrontierSpec& f, std::int64_t n, double c, std::uint64_t seed,
                 std::uint64_t stream, Sink&& sink) {
  if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("simulate: c must be > 0");
  const double top = f.M();
  if (top / f.area() > kMaxRejectionRatio) {
    throw std::runtime_error("simulate: rejection rate M / mean(f) exceeds 1e6");
  }
  const double mean = static_cast<double>(n) * c * f.area();
  Philox4x64 rng(seed, stream);
  std::poisson_distribution<std::int64_t> count_dist(mean);
  const std::int64_t count = mean > 0.0 ? count_dist(rng) : 0;
  for (std::int64_t i = 0; i < count; ++i) {
    while (true) {
      const double x = rng.uniform();
      const double y = top * rng.uniform();
      if (y <= f(x)) {
        sink(x, y);
        break;
      }
    }
  }
}

CellStats empty_stats(const PartitionConfig& cfg, const CellOracles& oracles) {
  const auto k = static_cast<std::size_t>(cfg.k_n());
  if (oracles.lambda.size() != k) {
    throw std::invalid_argument("cell statistics: oracle table does not match k_n");
  }
  CellStats s;
  s.count.assign(k, 0);
  s.x_star.assign(k, 0.0);
  s.z_star.assign(k, 0.0);
  s.lambda = oracles.lambda;
  s.m_cell = oracles.m_cell;
  s.M_cell = oracles.M_cell;
  return s;
}

void absorb(CellStats& s, std::size_t r, double y) {
  if (s.count[r]++ == 0) {
    s.x_star[r] = y;
    s.z_star[r] = y;
  } else {
    s.x_star[r] = std::max(s.x_star[r], y);
    s.z_star[r] = std::min(s.z_star[r], y);
  }
}

}  // namespace

PointSample simulate(const FrontierSpec& f, std::int64_t n, double c, std::uint64_t seed,
                     std::uint64_t stream) {
  PointSample s;
  s.n = n;
  s.c = c;
  s.seed = seed;
  s.stream = stream;
  s.frontier_label = f.label();
  draw_points(f, n, c, seed, stream, [&](double x, double y) { s.points.push_back({x, y}); });
  std::sort(s.points.begin(), s.points.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  return s;
}

CellStats simulate_cell_stats(const FrontierSpec& f, double c, std::uint64_t seed,
                              std::uint64_t stream, const PartitionConfig& cfg,
                              const CellOracles& oracles) {
  CellStats s = empty_stats(cfg, oracles);
  draw_points(f, cfg.n(), c, seed, stream,
              [&](double x, double y) { absorb(s, cfg.cell_of(x), y); });
  return s;
}

CellStats cell_stats(const PointSample& sample, const PartitionConfig& cfg,
                     const CellOracles& oracles) {
  if (sample.n != cfg.n()) {
    throw std::invalid_argument("cell_stats: sample and partition disagree on n");
  }
  CellStats s = empty_stats(cfg, oracles);
  for (const auto& p : sample.points) absorb(s, cfg.cell_of(p.x), p.y);
  return s;
}

CellStats cell_stats(const PointSample& sample, const PartitionConfig& cfg, const FrontierSpec& f) {
  return cell_stats(sample, cfg, cell_oracles(f, cfg));
}

void write_sample_csv(std::ostream& out, const PointSample& sample) {
  out << "# frontier=" << sample.frontier_label << " n=" << sample.n
      << " c=" << format_double(sample.c) << " seed=" << sample.seed
      << " stream=" << sample.stream << "\n";
  out << "x,y\n";
  for (const auto& p : sample.points) {
    out << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

PointSample read_sample_csv(std::istream& in) {
  PointSample s;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::runtime_error("sample CSV: missing '# frontier=... n=... c=... seed=...' header");
  }
  bool have_n = false;
  bool have_c = false;
  std::istringstream header(line.substr(2));
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::runtime_error("sample CSV: bad header token '" + token + "'");
    const auto key = token.substr(0, eq);
    const std::string_view value = std::string_view(token).substr(eq + 1);
    if (key == "frontier") {
      s.frontier_label = std::string(value);
    } else if (key == "n") {
      s.n = parse_integer<std::int64_t>(value);
      have_n = true;
    } else if (key == "c") {
      s.c = parse_double(value);
      have_c = true;
    } else if (key == "seed") {
      s.seed = parse_integer<std::uint64_t>(value);
    } else if (key == "stream") {
      s.stream = parse_integer<std::uint64_t>(value);
    }
  }
  if (!have_n || !have_c) throw std::runtime_error("sample CSV: header needs n and c");
  if (!std::getline(in, line) || line != "x,y") {
    throw std::runtime_error("sample CSV: expected column header 'x,y'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("sample CSV: malformed row '" + line + "'");
    const std::string_view row(line);
    s.points.push_back({parse_double(row.substr(0, comma)), parse_double(row.substr(comma + 1))});
  }
  return s;
}

}  // namespace frontier
