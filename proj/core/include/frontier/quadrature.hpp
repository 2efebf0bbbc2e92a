#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontier {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_subintervals = std::size_t{1} << 20;
};

// Adaptive composite Simpson rule with Richardson correction.
//
// The absolute tolerance is split evenly between the two halves at every
// bisection. Throws QuadratureError once more than max_subintervals pieces
// would be needed, which is what happens for integrands with a jump that
// is not at a or b.
template <class F>
double integrate(F&& g, double a, double b, QuadratureOptions opts = {}) {
  if (!(a <= b)) {
    throw std::invalid_argument("integrate: expected a <= b");
  }
  if (a == b) return 0.0;

  struct Segment {
    double a, b, fa, fm, fb, whole, tol;
  };
  auto simpson = [](double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  };

  const double fa = g(a);
  const double fb = g(b);
  const double fm = g(0.5 * (a + b));
  std::vector<Segment> stack;
  stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), opts.abs_tol});

  double total = 0.0;
  std::size_t pieces = 1;
  while (!stack.empty()) {
    const Segment s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const double lm = 0.5 * (s.a + m);
    const double rm = 0.5 * (m + s.b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = simpson(s.a, m, s.fa, flm, s.fm);
    const double right = simpson(m, s.b, s.fm, frm, s.fb);
    const double delta = left + right - s.whole;
    if (std::abs(delta) <= 15.0 * s.tol) {
      total += left + right + delta / 15.0;
      continue;
    }
    if (!(lm > s.a && rm < s.b) || ++pieces > opts.max_subintervals) {
      throw QuadratureError("integrate: tolerance " + std::to_string(opts.abs_tol) +
                            " not reached on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    }
    stack.push_back({m, s.b, s.fm, frm, s.fb, right, 0.5 * s.tol});
    stack.push_back({s.a, m, s.fa, flm, s.fm, left, 0.5 * s.tol});
  }
  return total;
}

}  // namespace frontier
