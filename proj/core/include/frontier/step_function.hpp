#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace frontier {

// Piecewise-constant function on [0, 1].
//
// Pieces are [b_j, b_{j+1}) except the last one, which is closed on the
// right so that x = 1 is always covered. Arithmetic between two step
// functions happens on the common refinement of their breakpoints, which
// keeps integrals and L2 norms exact.
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double value);
  // Equal-width pieces, one per value.
  static StepFunction uniform(std::vector<double> values);

  double operator()(double x) const;
  std::size_t piece_index(double x) const;

  std::size_t pieces() const noexcept { return values_.size(); }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  double width(std::size_t piece) const {
    return breakpoints_[piece + 1] - breakpoints_[piece];
  }

  StepFunction operator+(const StepFunction& other) const;
  StepFunction operator-(const StepFunction& other) const;
  StepFunction operator*(double scale) const;
  StepFunction shifted(double offset) const;

  // Same function expressed on a finer breakpoint set (which must contain
  // all of this function's breakpoints).
  StepFunction refined_to(std::span<const double> breakpoints) const;

  double integral() const;
  double l2_norm_squared() const;
  double inner_product(const StepFunction& other) const;
  double sup_norm() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

inline StepFunction operator*(double scale, const StepFunction& f) { return f * scale; }

// Sorted union of two breakpoint sets.
std::vector<double> common_refinement(std::span<const double> a, std::span<const double> b);

}  // namespace frontier
