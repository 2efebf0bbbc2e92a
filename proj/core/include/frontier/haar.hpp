#pragma once

#include <cstdint>

#include "frontier/frontier_spec.hpp"
#include "frontier/step_function.hpp"

namespace frontier {

// i = 2^{q-1} + p with 0 <= p < 2^{q-1}; defined for i >= 1.
struct DyadicIndex {
  std::uint64_t i;
  std::uint64_t p;
  unsigned q;
};

DyadicIndex dyadic_index(std::uint64_t i);

// [lo, hi), or [lo, hi] when the interval touches 1.
struct DyadicInterval {
  double lo;
  double hi;
  bool right_closed;

  bool contains(double x) const noexcept {
    return x >= lo && (x < hi || (right_closed && x == hi));
  }
};

// J_i = [p / 2^{q-1}, (p + 1) / 2^{q-1}), closed on the right iff i = 2^q - 1.
DyadicInterval haar_interval(std::uint64_t i);

// e_0 = 1 on [0, 1]; e_i = 2^{(q-1)/2} (1_{J_{2i}} - 1_{J_{2i+1}}) for i >= 1.
double haar_eval(std::uint64_t i, double x);

// e_i as an exact step function.
StepFunction haar_function(std::uint64_t i);

bool is_power_of_two(std::uint64_t v) noexcept;

// Index 0..h_n of the level block J_ℓ(x) among the h_n + 1 equal dyadic pieces.
std::uint64_t level_block(std::uint64_t h_n, double x);

// K_n(x, y) = (h_n + 1) 1{y in J_ℓ(x)} via the closed form.
double dirichlet_kernel(std::uint64_t h_n, double x, double y);
// The same kernel as the explicit sum Σ_{i<=h_n} e_i(x) e_i(y).
double dirichlet_kernel_sum(std::uint64_t h_n, double x, double y);

// a_i = ∫ e_i f, exact when the frontier provides an integral.
double haar_coefficient(const FrontierSpec& f, std::uint64_t i);

// f_n: the mean of f over each of the h_n + 1 dyadic blocks, which is the
// truncated Haar expansion Σ_{i<=h_n} a_i e_i.
StepFunction truncated_expansion(const FrontierSpec& f, std::uint64_t h_n);

}  // namespace frontier
