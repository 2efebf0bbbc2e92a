#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frontier/quadrature.hpp"

namespace frontier {

struct Extrema {
  double min;
  double max;
};

// Declared regularity of a frontier: 0 < m <= f <= M, and
// |f(x) - f(y)| <= L |x - y|^alpha for x, y not separated by a breakpoint.
struct Regularity {
  double m;
  double M;
  double alpha;
  double L;
};

// A frontier function f on [0, 1] bounding the support
// S = {(x, y) : 0 <= x <= 1, 0 <= y <= f(x)}.
//
// Optional capabilities let well-known shapes bypass numerics: an exact
// antiderivative, exact extrema over a subinterval, and the interior points
// where f may jump (quadrature is split there). Without them integrals use
// adaptive Simpson at 1e-10 and extrema use a grid + golden-section search
// with a Lipschitz enclosure.
//
// Immutable after construction; safe to share across threads.
class FrontierSpec {
 public:
  using Evaluator = std::function<double(double)>;
  using IntegralFn = std::function<double(double, double)>;
  using BoundsFn = std::function<Extrema(double, double)>;

  struct Capabilities {
    IntegralFn exact_integral;
    BoundsFn exact_bounds;
    std::vector<double> breakpoints;
  };

  // Validates the declared bounds and Lipschitz condition on a fixed set of
  // spot-check points; throws std::invalid_argument on violation.
  FrontierSpec(std::string label, Evaluator f, Regularity reg, Capabilities caps = {});

  double operator()(double x) const { return f_(x); }

  const std::string& label() const noexcept { return label_; }
  double m() const noexcept { return reg_.m; }
  double M() const noexcept { return reg_.M; }
  double alpha() const noexcept { return reg_.alpha; }
  double lipschitz() const noexcept { return reg_.L; }
  const Regularity& regularity() const noexcept { return reg_; }
  std::span<const double> breakpoints() const noexcept { return caps_.breakpoints; }

  bool has_exact_integral() const noexcept { return static_cast<bool>(caps_.exact_integral); }
  bool has_exact_bounds() const noexcept { return static_cast<bool>(caps_.exact_bounds); }
  bool is_constant() const noexcept { return reg_.m == reg_.M; }

  // ∫_a^b f, exact when available.
  double integral(double a, double b) const;

  // ∫_a^b g by quadrature, split at the frontier's breakpoints.
  template <class G>
  double integrate_piecewise(G&& g, double a, double b, QuadratureOptions opts = {}) const {
    double total = 0.0;
    double lo = a;
    for (double bp : caps_.breakpoints) {
      if (bp <= lo || bp >= b) continue;
      total += integrate(g, lo, bp, opts);
      lo = bp;
    }
    return total + integrate(g, lo, b, opts);
  }

  // inf and sup of f over [a, b).
  Extrema bounds(double a, double b) const;

  // λ(S) = ∫_0^1 f, computed once at construction.
  double area() const noexcept { return area_; }

 private:
  std::string label_;
  Evaluator f_;
  Regularity reg_;
  Capabilities caps_;
  double area_ = 0.0;
};

FrontierSpec constant_frontier(double a);
// a + b x
FrontierSpec affine_frontier(double a, double b);
// a + b sin(2 pi x)
FrontierSpec sine_frontier(double a, double b);
// low on [0, jump), high on [jump, 1]
FrontierSpec two_level_frontier(double low, double high, double jump);

// Parses the labels produced by the factories above, e.g. "constant:1",
// "affine:1,0.5", "sine:1,0.25", "twolevel:1,1.5,0.5".
FrontierSpec parse_frontier(std::string_view label);

// Extrema of f on [a, b) without an exact capability: 64-point grid, golden-
// section refinement around the best nodes, and a Lipschitz certificate
// L (w/2)^alpha per grid interval. The grid doubles until the certified
// enclosure is narrower than 1e-8 or 2^16 intervals are used.
Extrema enclose_extrema(const FrontierSpec::Evaluator& f, double a, double b, double alpha,
                        double L);

}  // namespace frontier
