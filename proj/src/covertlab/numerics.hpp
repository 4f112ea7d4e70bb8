#pragma once

#include <functional>
#include <stdexcept>

namespace covert::num {

/// Accuracy/effort budget shared by the adaptive 1-D routines.
/// rel_tol must be in (0, 1e-2], abs_tol >= 0, max_iterations >= 10.
struct ToleranceSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_iterations = 200;

  void validate() const;  // throws std::invalid_argument on a bad spec
};

inline constexpr ToleranceSpec kRootTol{1e-9, 1e-14, 200};
inline constexpr ToleranceSpec kTightRootTol{1e-14, 1e-13, 300};
inline constexpr ToleranceSpec kQuadTol{1e-8, 1e-15, 4000};

/// Thrown when an adaptive routine exhausts its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Principal branch W0: inverse of w*exp(w) for w >= -1.
/// Domain x >= -1/e; throws std::domain_error outside.
double lambert_w0(double x);

/// Lower branch W-1: inverse of w*exp(w) for w <= -1.
/// Domain -1/e <= x < 0; throws std::domain_error outside.
double lambert_wm1(double x);

/// Adaptive Gauss-Kronrod (G7,K15) quadrature over [a, b].
/// Panels are halved until the per-panel error estimate fits the budget;
/// throws ConvergenceError once max_iterations panel evaluations are spent.
double integrate_1d(const Fn1& f, double a, double b,
                    const ToleranceSpec& tol = kQuadTol);

/// Iterated integral of f(y, z) over {y >= 0, z >= 0, y + z <= phi}:
/// outer adaptive pass over z, inner pass over y in [0, phi - z].
double integrate_triangle(const Fn2& f, double phi,
                          const ToleranceSpec& tol = kQuadTol);

/// Bracketed root finding (bisection with secant/inverse-quadratic steps).
/// Requires f(lo)*f(hi) <= 0; stops when |f| <= abs_tol or the bracket
/// width drops below rel_tol*|x|.
double find_root(const Fn1& f, double lo, double hi,
                 const ToleranceSpec& tol = kRootTol);

struct MaxResult {
  double argmax;
  double max;
};

/// Dense-grid seed (max_iterations points) followed by golden-section
/// refinement around the best cell. Flat functions resolve to lo.
MaxResult maximize_1d(const Fn1& f, double lo, double hi,
                      const ToleranceSpec& tol = kRootTol);

}  // namespace covert::num
