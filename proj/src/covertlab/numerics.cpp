#include "covertlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace covert::num {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kE = 2.718281828459045;
constexpr double kInvE = 0.36787944117144233;

double halley_w(double x, double w) {
  for (int i = 0; i < 60; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 2.0 * kEps * std::max(std::abs(x), std::abs(w * ew)))
      break;
    const double fp = ew * (w + 1.0);
    const double denom = fp - 0.5 * f * (w + 2.0) / (w + 1.0);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 2.0 * kEps * std::abs(w)) break;
  }
  return w;
}

// Series around the branch point x = -1/e in p = sqrt(2(e*x + 1)); the
// upper branch takes +p, the lower branch -p.
double branch_point_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 +
         p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

double branch_point_p(double x) {
  double p2 = 2.0 * (kE * x + 1.0);
  if (p2 < 0.0) p2 = 0.0;  // x within rounding of -1/e
  return std::sqrt(p2);
}

}  // namespace

void ToleranceSpec::validate() const {
  if (!(rel_tol > 0.0) || rel_tol > 1e-2)
    throw std::invalid_argument("ToleranceSpec: rel_tol must be in (0, 1e-2]");
  if (!(abs_tol >= 0.0))
    throw std::invalid_argument("ToleranceSpec: abs_tol must be >= 0");
  if (max_iterations < 10)
    throw std::invalid_argument("ToleranceSpec: max_iterations must be >= 10");
}

double lambert_w0(double x) {
  if (!(x >= -kInvE)) {
    if (x > -kInvE - 1e-12)
      x = -kInvE;
    else
      throw std::domain_error("lambert_w0: x below -1/e");
  }
  if (x == 0.0) return 0.0;

  const double p = branch_point_p(x);
  if (p < 1e-4) return branch_point_series(p);

  double w;
  if (x < -0.3233) {
    w = branch_point_series(p);
  } else {
    // Winitzki-style global guess, good to a few percent for x > -1/e
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  return halley_w(x, w);
}

double lambert_wm1(double x) {
  if (!(x >= -kInvE)) {
    if (x > -kInvE - 1e-12)
      x = -kInvE;
    else
      throw std::domain_error("lambert_wm1: x below -1/e");
  }
  if (!(x < 0.0)) throw std::domain_error("lambert_wm1: x must be negative");

  const double p = branch_point_p(x);
  if (p < 1e-4) return branch_point_series(-p);

  double w;
  if (x < -0.32) {
    w = branch_point_series(-p);
  } else {
    // fixed point w = log(-x) - log(-w), contracting on the lower branch
    const double lx = std::log(-x);
    w = lx < -2.0 ? lx - std::log(-lx) : -2.0;
    for (int i = 0; i < 12; ++i) w = lx - std::log(-w);
  }
  return halley_w(x, w);
}

namespace {

// Kronrod 15 abscissae (positive half) and weights; rows 1,3,5,7 carry the
// embedded Gauss-7 rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b, value, error;
};

Panel eval_panel(const Fn1& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double k15 = kWgk[7] * fc;
  double g7 = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    k15 += kWgk[i] * fsum;
    if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
  }
  k15 *= half;
  g7 *= half;
  return Panel{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

double integrate_1d(const Fn1& f, double a, double b, const ToleranceSpec& tol) {
  tol.validate();
  if (!(a <= b)) throw std::invalid_argument("integrate_1d: requires a <= b");
  if (a == b) return 0.0;

  const double width = b - a;
  int evals = 1;
  std::vector<Panel> work{eval_panel(f, a, b)};
  double pending = work[0].value;
  double done_value = 0.0;

  while (!work.empty()) {
    const Panel s = work.back();
    work.pop_back();
    pending -= s.value;

    const double scale = std::max(std::abs(done_value + pending + s.value), std::abs(s.value));
    const double budget =
        std::max(tol.abs_tol, tol.rel_tol * scale) * ((s.b - s.a) / width);
    const double min_width =
        8.0 * kEps * std::max({std::abs(s.a), std::abs(s.b), 1.0});

    if (s.error <= budget || s.error <= tol.rel_tol * std::abs(s.value) ||
        (s.b - s.a) <= min_width) {
      done_value += s.value;
      continue;
    }
    if (evals + 2 > tol.max_iterations)
      throw ConvergenceError("integrate_1d: panel budget exhausted");
    const double mid = 0.5 * (s.a + s.b);
    Panel left = eval_panel(f, s.a, mid);
    Panel right = eval_panel(f, mid, s.b);
    evals += 2;
    pending += left.value + right.value;
    work.push_back(left);
    work.push_back(right);
  }
  return done_value;
}

double integrate_triangle(const Fn2& f, double phi, const ToleranceSpec& tol) {
  tol.validate();
  if (!(phi >= 0.0))
    throw std::invalid_argument("integrate_triangle: requires phi >= 0");
  if (phi == 0.0) return 0.0;

  ToleranceSpec inner = tol;
  inner.rel_tol = std::max(tol.rel_tol * 0.1, 1e-13);
  const Fn1 outer = [&](double z) {
    const double hi = phi - z;
    if (hi <= 0.0) return 0.0;
    return integrate_1d([&f, z](double y) { return f(y, z); }, 0.0, hi, inner);
  };
  return integrate_1d(outer, 0.0, phi, tol);
}

double find_root(const Fn1& f, double lo, double hi, const ToleranceSpec& tol) {
  tol.validate();
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("find_root: f(lo) and f(hi) have the same sign");

  // Brent: b is the current best, c the counterpoint of the bracket
  double c = a, fc = fa;
  double d = b - a, e = b - a;
  for (int iter = 0; iter < tol.max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 =
        2.0 * kEps * std::abs(b) + 0.5 * tol.rel_tol * std::abs(b);
    const double m = 0.5 * (c - b);
    if (std::abs(fb) <= tol.abs_tol || std::abs(m) <= tol1 || fb == 0.0)
      return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (m > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

MaxResult maximize_1d(const Fn1& f, double lo, double hi, const ToleranceSpec& tol) {
  tol.validate();
  if (!(lo < hi)) throw std::invalid_argument("maximize_1d: requires lo < hi");

  const int n = std::max(tol.max_iterations, 16);
  double best_x = lo, best_v = f(lo);
  int best_i = 0;
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
      best_i = i;
    }
  }

  // golden-section refinement inside the bracketing grid cells
  double a = lo + (hi - lo) * std::max(best_i - 1, 0) / (n - 1);
  double b = lo + (hi - lo) * std::min(best_i + 1, n - 1) / (n - 1);
  constexpr double kGolden = 0.6180339887498949;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  const double min_width = tol.rel_tol * (hi - lo);
  for (int iter = 0; iter < 200 && (b - a) > min_width; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2; f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1; f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  if (f1 > best_v) { best_v = f1; best_x = x1; }
  if (f2 > best_v) { best_v = f2; best_x = x2; }
  return MaxResult{best_x, best_v};
}

}  // namespace covert::num
