#include "frontier/haar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace frontier {

DyadicIndex dyadic_index(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("dyadic_index: i must be >= 1");
  const auto q = static_cast<unsigned>(std::bit_width(i));
  return {i, i - (std::uint64_t{1} << (q - 1)), q};
}

DyadicInterval haar_interval(std::uint64_t i) {
  const auto d = dyadic_index(i);
  const double scale = std::ldexp(1.0, -static_cast<int>(d.q - 1));
  const bool last = d.p + 1 == (std::uint64_t{1} << (d.q - 1));
  return {static_cast<double>(d.p) * scale, last ? 1.0 : static_cast<double>(d.p + 1) * scale, last};
}

double haar_eval(std::uint64_t i, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("haar_eval: x outside [0, 1]");
  if (i == 0) return 1.0;
  const auto d = dyadic_index(i);
  const double amp = std::pow(2.0, 0.5 * static_cast<double>(d.q - 1));
  if (haar_interval(2 * i).contains(x)) return amp;
  if (haar_interval(2 * i + 1).contains(x)) return -amp;
  return 0.0;
}

StepFunction haar_function(std::uint64_t i) {
  if (i == 0) return StepFunction::constant(1.0);
  const auto d = dyadic_index(i);
  const double amp = std::pow(2.0, 0.5 * static_cast<double>(d.q - 1));
  const auto left = haar_interval(2 * i);
  const auto right = haar_interval(2 * i + 1);
  std::vector<double> bp{0.0};
  std::vector<double> vals;
  if (left.lo > 0.0) {
    bp.push_back(left.lo);
    vals.push_back(0.0);
  }
  bp.push_back(left.hi);
  vals.push_back(amp);
  bp.push_back(right.hi);
  vals.push_back(-amp);
  if (right.hi < 1.0) {
    bp.push_back(1.0);
    vals.push_back(0.0);
  }
  return StepFunction(std::move(bp), std::move(vals));
}

bool is_power_of_two(std::uint64_t v) noexcept { return std::has_single_bit(v); }

namespace {

void require_level(std::uint64_t h_n) {
  if (!is_power_of_two(h_n + 1)) {
    throw std::invalid_argument("h_n + 1 must be a power of two, got h_n = " + std::to_string(h_n));
  }
}

}  // namespace

std::uint64_t level_block(std::uint64_t h_n, double x) {
  require_level(h_n);
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("level_block: x outside [0, 1]");
  const auto blocks = h_n + 1;
  return std::min(static_cast<std::uint64_t>(x * static_cast<double>(blocks)), blocks - 1);
}

double dirichlet_kernel(std::uint64_t h_n, double x, double y) {
  return level_block(h_n, x) == level_block(h_n, y) ? static_cast<double>(h_n + 1) : 0.0;
}

double dirichlet_kernel_sum(std::uint64_t h_n, double x, double y) {
  require_level(h_n);
  double s = 0.0;
  for (std::uint64_t i = 0; i <= h_n; ++i) s += haar_eval(i, x) * haar_eval(i, y);
  return s;
}

double haar_coefficient(const FrontierSpec& f, std::uint64_t i) {
  if (i == 0) return f.integral(0.0, 1.0);
  const auto d = dyadic_index(i);
  const double amp = std::pow(2.0, 0.5 * static_cast<double>(d.q - 1));
  const auto left = haar_interval(2 * i);
  const auto right = haar_interval(2 * i + 1);
  return amp * (f.integral(left.lo, left.hi) - f.integral(right.lo, right.hi));
}

StepFunction truncated_expansion(const FrontierSpec& f, std::uint64_t h_n) {
  require_level(h_n);
  const auto blocks = h_n + 1;
  std::vector<double> vals(blocks);
  const double w = 1.0 / static_cast<double>(blocks);
  for (std::uint64_t l = 0; l < blocks; ++l) {
    const double lo = static_cast<double>(l) * w;
    const double hi = l + 1 == blocks ? 1.0 : static_cast<double>(l + 1) * w;
    vals[l] = f.integral(lo, hi) / (hi - lo);
  }
  return StepFunction::uniform(std::move(vals));
}

}  // namespace frontier
