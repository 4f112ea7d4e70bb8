#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "covertlab/numerics.hpp"
#include "doctest.h"

using namespace covert;

namespace {

// Independent oracle: bisection on w*exp(w) = x over a bracket known to
// contain the wanted branch value.
double bisect_wexpw(double x, double lo, double hi) {
  auto f = [x](double w) { return w * std::exp(w) - x; };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

constexpr double kInvE = 0.36787944117144233;

}  // namespace

TEST_CASE("lambert_w0 fixed points and oracle values") {
  CHECK(num::lambert_w0(0.0) == 0.0);
  CHECK(num::lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));

  // bisection oracle on [0, 1] for x = 1
  const double w1 = bisect_wexpw(1.0, 0.0, 1.0);
  CHECK(w1 == doctest::Approx(0.567143).epsilon(1e-6));
  CHECK(num::lambert_w0(1.0) == doctest::Approx(w1).epsilon(1e-12));
}

TEST_CASE("lambert_wm1 branch values") {
  CHECK(num::lambert_wm1(-kInvE) == doctest::Approx(-1.0).epsilon(1e-8));

  const double wa = bisect_wexpw(-0.1, -10.0, -1.0);
  CHECK(wa == doctest::Approx(-3.577152).epsilon(1e-6));
  CHECK(num::lambert_wm1(-0.1) == doctest::Approx(wa).epsilon(1e-12));

  const double wb = bisect_wexpw(-0.2, -10.0, -1.0);
  CHECK(wb == doctest::Approx(-2.542641).epsilon(1e-6));
  CHECK(num::lambert_wm1(-0.2) == doctest::Approx(wb).epsilon(1e-12));
}

TEST_CASE("lambert domain errors") {
  CHECK_THROWS_AS(num::lambert_w0(-0.4), std::domain_error);
  CHECK_THROWS_AS(num::lambert_wm1(-0.4), std::domain_error);
  CHECK_THROWS_AS(num::lambert_wm1(0.0), std::domain_error);
  CHECK_THROWS_AS(num::lambert_wm1(0.5), std::domain_error);
}

TEST_CASE("lambert identities over log-uniform samples") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // W0 over (-1/e + 1e-6, 10]
  for (int i = 0; i < 2000; ++i) {
    const double t = u(rng);
    const double x = -kInvE + 1e-6 + (10.0 + kInvE) * (std::pow(10.0, 3.0 * t) - 1.0) / 999.0;
    const double w = num::lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-10 * std::max(1.0, std::abs(x)));
    CHECK(w >= -1.0 - 1e-12);
  }
  // W-1 over [-1/e + eps, -1e-12)
  for (int i = 0; i < 2000; ++i) {
    const double t = u(rng);
    const double x = -std::exp(std::log(kInvE - 1e-9) * (1.0 - t) + std::log(1e-12) * t);
    const double w = num::lambert_wm1(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-10 * std::max(1.0, std::abs(x)));
    CHECK(w <= -1.0 + 1e-12);
    CHECK(num::lambert_w0(x) >= -1.0 - 1e-12);
    CHECK(num::lambert_wm1(x) <= num::lambert_w0(x) + 1e-12);
  }
}

TEST_CASE("lambert_w0 monotone on a sorted grid") {
  double prev = num::lambert_w0(-kInvE + 1e-9);
  for (int i = 1; i <= 500; ++i) {
    const double x = -kInvE + 1e-9 + (10.0 + kInvE) * i / 500.0;
    const double w = num::lambert_w0(x);
    CHECK(w >= prev - 1e-12);
    prev = w;
  }
}

TEST_CASE("integrate_1d closed forms") {
  const auto f = [](double y) { return std::exp(-y); };
  CHECK(num::integrate_1d(f, 0.0, 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
  CHECK(num::integrate_1d([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
  CHECK(num::integrate_1d(f, 0.0, 5.0) ==
        doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-8));
}

TEST_CASE("integrate_1d additivity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto f = [](double y) { return std::cos(3.0 * y) * std::exp(-0.5 * y); };
  for (int i = 0; i < 20; ++i) {
    const double a = 4.0 * u(rng);
    const double c = a + 4.0 * u(rng) + 0.1;
    const double b = a + (c - a) * u(rng);
    const double whole = num::integrate_1d(f, a, c);
    const double parts = num::integrate_1d(f, a, b) + num::integrate_1d(f, b, c);
    CHECK(std::abs(whole - parts) <=
          2.0 * num::kQuadTol.rel_tol * std::max(1.0, std::abs(whole)));
  }
}

TEST_CASE("integrate_1d input checks") {
  CHECK_THROWS_AS(num::integrate_1d([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
  // a needle the panel budget cannot resolve
  num::ToleranceSpec tiny{1e-10, 0.0, 10};
  CHECK_THROWS_AS(
      num::integrate_1d([](double y) { return std::exp(-1e6 * (y - 0.3137) * (y - 0.3137)); },
                        0.0, 1.0, tiny),
      num::ConvergenceError);
}

TEST_CASE("integrate_triangle closed forms") {
  const auto f = [](double y, double z) { return std::exp(-y - z); };
  CHECK(num::integrate_triangle(f, 1.0) ==
        doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-8));
  CHECK(num::integrate_triangle(f, 0.0) == 0.0);
  CHECK(num::integrate_triangle([](double, double) { return 1.0; }, 2.0) ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("find_root basics") {
  CHECK(num::find_root([](double x) { return x - 0.5; }, 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(num::find_root([](double x) { return std::expm1(x); }, -1.0, 1.0)) <=
        1e-9);
  CHECK_THROWS_AS(num::find_root([](double x) { return x + 2.0; }, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("find_root on the reduced worst-case covertness curve") {
  const auto reduced = [](double rho) {
    return rho * std::exp((1.0 - rho) / rho * std::log1p(-rho)) - 0.5;
  };
  const double rho = num::find_root(reduced, 1e-9, 1.0 - 1e-9);
  CHECK(rho == doctest::Approx(0.773).epsilon(1e-3));
}

TEST_CASE("find_root residual property") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const num::ToleranceSpec tol{1e-12, 1e-13, 200};
  for (int i = 0; i < 50; ++i) {
    const double c = u(rng) * 2.0 - 1.0;
    const auto f = [c](double x) { return std::tanh(x) - c * 0.76; };
    const double x = num::find_root(f, -5.0, 5.0, tol);
    CHECK(std::abs(f(x)) <= 10.0 * tol.abs_tol);
  }
}

TEST_CASE("maximize_1d") {
  const auto quad = [](double x) { return -(x - 0.3) * (x - 0.3); };
  const auto r = num::maximize_1d(quad, 0.0, 1.0);
  CHECK(r.argmax == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(r.max == doctest::Approx(0.0).epsilon(1e-9));

  const auto line = num::maximize_1d([](double x) { return x; }, 0.0, 1.0);
  CHECK(line.argmax == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(line.max == doctest::Approx(1.0).epsilon(1e-9));

  const auto flat = num::maximize_1d([](double) { return 2.0; }, 0.25, 0.75);
  CHECK(flat.argmax == 0.25);  // flat functions resolve to lo
  CHECK(flat.max == 2.0);
}

TEST_CASE("tolerance spec validation") {
  CHECK_THROWS_AS((num::ToleranceSpec{0.5, 0.0, 100}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS((num::ToleranceSpec{1e-9, -1.0, 100}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS((num::ToleranceSpec{1e-9, 0.0, 5}).validate(),
                  std::invalid_argument);
  CHECK_NOTHROW((num::ToleranceSpec{1e-9, 0.0, 10}).validate());
}
