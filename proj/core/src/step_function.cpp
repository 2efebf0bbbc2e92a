#include "frontier/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontier {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("StepFunction: breakpoints must run from 0 to 1");
  }
  if (values_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("StepFunction: need exactly one value per piece");
  }
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j - 1] < breakpoints_[j])) {
      throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
    }
  }
}

StepFunction StepFunction::constant(double value) { return StepFunction({0.0, 1.0}, {value}); }

StepFunction StepFunction::uniform(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("StepFunction::uniform: no values");
  const std::size_t p = values.size();
  std::vector<double> bp(p + 1);
  for (std::size_t j = 0; j <= p; ++j) bp[j] = static_cast<double>(j) / static_cast<double>(p);
  bp.back() = 1.0;
  return StepFunction(std::move(bp), std::move(values));
}

std::size_t StepFunction::piece_index(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("StepFunction: x outside [0, 1]");
  }
  // Interior breakpoints <= x, so a tie goes to the piece on the right.
  const auto first = breakpoints_.begin() + 1;
  const auto last = breakpoints_.end() - 1;
  return static_cast<std::size_t>(std::upper_bound(first, last, x) - first);
}

double StepFunction::operator()(double x) const { return values_[piece_index(x)]; }

std::vector<double> common_refinement(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StepFunction StepFunction::refined_to(std::span<const double> bp) const {
  std::vector<double> vals(bp.size() - 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    while (j + 1 < values_.size() && breakpoints_[j + 1] <= bp[i]) ++j;
    vals[i] = values_[j];
  }
  return StepFunction(std::vector<double>(bp.begin(), bp.end()), std::move(vals));
}

namespace {

template <class Op>
StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
  const auto bp = common_refinement(a.breakpoints(), b.breakpoints());
  const auto ra = a.refined_to(bp);
  const auto rb = b.refined_to(bp);
  std::vector<double> vals(ra.pieces());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = op(ra.values()[i], rb.values()[i]);
  return StepFunction(bp, std::move(vals));
}

}  // namespace

StepFunction StepFunction::operator+(const StepFunction& other) const {
  return combine(*this, other, [](double u, double v) { return u + v; });
}

StepFunction StepFunction::operator-(const StepFunction& other) const {
  return combine(*this, other, [](double u, double v) { return u - v; });
}

StepFunction StepFunction::operator*(double scale) const {
  auto vals = values_;
  for (auto& v : vals) v *= scale;
  return StepFunction(breakpoints_, std::move(vals));
}

StepFunction StepFunction::shifted(double offset) const {
  auto vals = values_;
  for (auto& v : vals) v += offset;
  return StepFunction(breakpoints_, std::move(vals));
}

double StepFunction::integral() const {
  double s = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) s += values_[j] * width(j);
  return s;
}

double StepFunction::l2_norm_squared() const {
  double s = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) s += values_[j] * values_[j] * width(j);
  return s;
}

double StepFunction::inner_product(const StepFunction& other) const {
  const auto bp = common_refinement(breakpoints_, other.breakpoints_);
  const auto ra = refined_to(bp);
  const auto rb = other.refined_to(bp);
  double s = 0.0;
  for (std::size_t j = 0; j < ra.pieces(); ++j) s += ra.values_[j] * rb.values_[j] * ra.width(j);
  return s;
}

double StepFunction::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace frontier
