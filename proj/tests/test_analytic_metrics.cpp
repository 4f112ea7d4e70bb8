#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "covertlab/analytic_metrics.hpp"
#include "covertlab/monte_carlo.hpp"
#include "covertlab/numerics.hpp"
#include "doctest.h"

using namespace covert;

namespace {

const NoiseProfile kRef{0.01, 1.0, 1.0, 0.01};  // -20 dB receiver, 0 dB attackers

}  // namespace

TEST_CASE("tp under power control") {
  CHECK(metrics::tp_pc(kRef, 0.01, 0.0) == 1.0);
  CHECK(metrics::tp_pc(kRef, 0.01, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(metrics::tp_pc(kRef, 1e9, 1.0) >= 1.0 - 1e-8);

  // Monte Carlo oracle for the closed form
  const auto est = mc::estimate_tp(ScenarioId::ip(), kRef, {0.01, 1.0, 1.0}, 1000000, 5);
  CHECK(std::abs(est.mean - std::exp(-1.0)) <= 3.0 * est.half_width);
}

TEST_CASE("tp under artificial noise") {
  // rho = 1 removes the noise share entirely
  CHECK(metrics::tp_an(kRef, 0.01, 1.0, 0.7) == metrics::tp_pc(kRef, 0.01, 0.7));
  // capacity ceiling: 2^1 == 1/(1 - 0.5)
  CHECK(metrics::tp_an(kRef, 0.01, 0.5, 1.0) == 0.0);
  CHECK(metrics::tp_an(kRef, 0.01, 0.5, 1.2) == 0.0);

  CHECK(metrics::tp_an(kRef, 0.01, 0.75, 0.5) == doctest::Approx(0.5269).epsilon(2e-3));
  const auto est =
      mc::estimate_tp(ScenarioId::ia(), kRef, {0.01, 0.75, 0.5}, 1000000, 6);
  CHECK(std::abs(est.mean - metrics::tp_an(kRef, 0.01, 0.75, 0.5)) <=
        3.0 * est.half_width);
}

TEST_CASE("sop closed forms, power control") {
  NoiseProfile equal{1.0, 1.0, 1.0, 0.01};
  CHECK(metrics::sop_ip(equal, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(metrics::sop_ip(kRef, 1.0) == doctest::Approx(0.02 / 1.02).epsilon(1e-12));

  // inversion: sop_ip(log2(se2 eps/( (1-eps) sb2 ))) == eps
  const double eps = 0.37;
  const double rs = std::log2(kRef.sigma_e2 * eps / ((1.0 - eps) * kRef.sigma_b2));
  CHECK(metrics::sop_ip(kRef, rs) == doctest::Approx(eps).epsilon(1e-12));

  CHECK(metrics::sop_fp(equal, 0.0) == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  CHECK(metrics::sop_fp(kRef, 60.0) == doctest::Approx(1.0).epsilon(1e-6));
  // friend-case inversion via the closed-form rate bound
  const double root = std::sqrt(1.0 - eps);
  const double rs_fp = std::log2((1.0 - root) * (kRef.sigma_w2 + kRef.sigma_e2) /
                                 (kRef.sigma_b2 * root));
  CHECK(metrics::sop_fp(kRef, rs_fp) == doctest::Approx(eps).epsilon(1e-12));
}

TEST_CASE("sop_ia against conditional Monte Carlo") {
  const double v = metrics::sop_ia(kRef, 0.01, 0.75, 0.25);
  CHECK(v >= 0.0);
  CHECK(v <= 1.0);
  const auto est =
      mc::estimate_sop(ScenarioId::ia(), kRef, {0.01, 0.75, 0.25}, 1000000, 9);
  CHECK(std::abs(v - est.mean) <= 3.0 * est.half_width);

  // near-zero rate is almost never intercepted (receiver far quieter)
  NoiseProfile quiet{1e-4, 1.0, 1.0, 0.01};
  CHECK(metrics::sop_ia(quiet, 0.01, 0.75, 1e-6) <= 1e-3);
}

TEST_CASE("sop_fa against conditional Monte Carlo") {
  const double v = metrics::sop_fa(kRef, 0.01, 0.75, 0.25);
  CHECK(v >= 0.0);
  CHECK(v <= 1.0);
  const auto est =
      mc::estimate_sop(ScenarioId::fa(), kRef, {0.01, 0.75, 0.25}, 1000000, 10);
  CHECK(std::abs(v - est.mean) <= 3.0 * est.half_width);

  NoiseProfile quiet{1e-4, 1.0, 1.0, 0.01};
  CHECK(metrics::sop_fa(quiet, 0.01, 0.75, 1e-6) <= 1e-3);
}

TEST_CASE("an sop feasibility errors") {
  CHECK_THROWS_AS(metrics::sop_ia(kRef, 0.01, 0.5, 1.0), metrics::FeasibilityError);
  CHECK_THROWS_AS(metrics::sop_fa(kRef, 0.01, 0.5, 1.5), metrics::FeasibilityError);
  CHECK_THROWS_AS(metrics::sop_ia(kRef, 0.01, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("rho -> 1 limits reduce to the power-control forms") {
  const double rho = 1.0 - 1e-9;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    NoiseProfile n{std::pow(10.0, -3.0 * u(rng) - 1.0),
                   std::pow(10.0, u(rng) - 0.5),
                   std::pow(10.0, u(rng) - 0.5), 0.01};
    const double pa = std::pow(10.0, -2.0 * u(rng));
    const double rs = 0.05 + u(rng);
    CHECK(std::abs(metrics::tp_an(n, pa, rho, rs) - metrics::tp_pc(n, pa, rs)) <= 1e-4);
    CHECK(std::abs(metrics::sop_ia(n, pa, rho, rs) - metrics::sop_ip(n, rs)) <= 1e-4);
    CHECK(std::abs(metrics::sop_fa(n, pa, rho, rs) - metrics::sop_fp(n, rs)) <= 1e-4);
  }
}

TEST_CASE("detector thresholds") {
  CHECK(metrics::theta_star(ScenarioId::ip(), kRef, 1.0, 1.0) ==
        doctest::Approx(1.01).epsilon(1e-14));
  CHECK(metrics::theta_star(ScenarioId::fa(), kRef, 1.0, 0.5) ==
        doctest::Approx(2.0 + 2.0 * std::log(2.0)).epsilon(1e-14));
  // thresholds sit strictly above the silent-hypothesis noise floor
  CHECK(metrics::theta_star(ScenarioId::ia(), kRef, 1.0, 0.5) > kRef.sigma_w2);
  CHECK(metrics::theta_star(ScenarioId::fp(), kRef, 1.0, 1.0) >
        kRef.sigma_w2 + kRef.sigma_e2);
}

TEST_CASE("theta_star maximizes the covertness outage") {
  // dense-grid check against the stationary point for the an scenarios
  const double expect_ia = 1.0 + std::log(2.0);
  CHECK(metrics::theta_star(ScenarioId::ia(), kRef, 1.0, 0.5) ==
        doctest::Approx(expect_ia).epsilon(1e-12));
  const auto grid_ia = num::maximize_1d(
      [&](double th) { return metrics::cop(ScenarioId::ia(), kRef, 1.0, 0.5, th); },
      1.0 + 1e-6, 11.0, num::ToleranceSpec{1e-7, 0.0, 2000});
  CHECK(grid_ia.argmax == doctest::Approx(expect_ia).epsilon(1e-4));

  const auto grid_fa = num::maximize_1d(
      [&](double th) { return metrics::cop(ScenarioId::fa(), kRef, 1.0, 0.5, th); },
      2.0 + 1e-6, 12.0, num::ToleranceSpec{1e-7, 0.0, 2000});
  CHECK(grid_fa.argmax ==
        doctest::Approx(metrics::theta_star(ScenarioId::fa(), kRef, 1.0, 0.5))
            .epsilon(1e-4));
}

TEST_CASE("detection errors closed forms") {
  // threshold at or below the noise floor: always alarmed, never missed
  auto de = metrics::detection_errors(ScenarioId::ip(), kRef, 1.0, 1.0, 0.5);
  CHECK(de.p_fa == 1.0);
  CHECK(de.p_md == 0.0);

  // two-antenna sum at u = 1: shape-2 gamma CDF
  de = metrics::detection_errors(ScenarioId::fp(), kRef, 1.0, 1.0, 3.0);
  CHECK(de.p_md == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(de.p_fa == 0.0);

  de = metrics::detection_errors(ScenarioId::ia(), kRef, 1.0, 0.5, 1.0 + std::log(2.0));
  CHECK(de.p_fa == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(de.p_md == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cop identity and worst case") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ScenarioId all[] = {ScenarioId::ip(), ScenarioId::ia(), ScenarioId::fp(),
                            ScenarioId::fa()};
  for (int i = 0; i < 100; ++i) {
    const ScenarioId sc = all[i % 4];
    NoiseProfile n{0.01 + u(rng), 0.1 + u(rng), 0.1 + u(rng), 0.01};
    const double pa = 0.05 + u(rng);
    const double rho = 0.05 + 0.9 * u(rng);
    const double theta = 4.0 * u(rng);
    const auto de = metrics::detection_errors(sc, n, pa, rho, theta);
    CHECK(metrics::cop(sc, n, pa, rho, theta) ==
          doctest::Approx(1.0 - de.p_fa - de.p_md).epsilon(1e-15));
  }

  // threshold at/below the silent floor gives zero outage everywhere
  for (const ScenarioId sc : all) {
    CHECK(metrics::cop(sc, kRef, 1.0, 0.5, 0.99) == 0.0);
  }

  // worst-case values: reduced forms at the optimal threshold
  CHECK(metrics::cop_at_optimal_theta(ScenarioId::ia(), kRef, 1.0, 0.5) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(metrics::cop_at_optimal_theta(ScenarioId::fa(), kRef, 1.0, 0.5) ==
        doctest::Approx(0.36079).epsilon(1e-4));
  // cop at theta* equals the reduced form exactly
  for (const ScenarioId sc : all) {
    const double rho = 0.62;
    const double th = metrics::theta_star(sc, kRef, 0.7, rho);
    CHECK(metrics::cop(sc, kRef, 0.7, rho, th) ==
          doctest::Approx(metrics::cop_at_optimal_theta(sc, kRef, 0.7, rho))
              .epsilon(1e-12));
  }

  // binding inversions
  const double eps_c = 0.23;
  CHECK(metrics::cop_at_optimal_theta(ScenarioId::ip(), kRef,
                                      -kRef.upsilon / std::log(eps_c), 1.0) ==
        doctest::Approx(eps_c).epsilon(1e-12));
  const double w = num::lambert_wm1(-eps_c / std::exp(1.0));
  CHECK(metrics::cop_at_optimal_theta(ScenarioId::fp(), kRef,
                                      -kRef.upsilon / (1.0 + w), 1.0) ==
        doctest::Approx(eps_c).epsilon(1e-10));
  // reduced independence form at rho = 0.773 sits near one half
  CHECK(metrics::cop_at_optimal_theta(ScenarioId::ia(), kRef, 1.0, 0.773) ==
        doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("probability ranges and monotonicity properties") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ScenarioId all[] = {ScenarioId::ip(), ScenarioId::ia(), ScenarioId::fp(),
                            ScenarioId::fa()};
  for (int i = 0; i < 200; ++i) {
    const ScenarioId sc = all[i % 4];
    NoiseProfile n{std::pow(10.0, -3.0 * u(rng)), std::pow(10.0, u(rng) - 0.5),
                   std::pow(10.0, u(rng) - 0.5), 0.001 + 0.05 * u(rng)};
    const double pa = std::pow(10.0, -2.5 * u(rng));
    const double rho = 0.05 + 0.9 * u(rng);
    const double ceiling = -std::log2(1.0 - rho);
    const double rs = sc.scheme == Scheme::ArtificialNoise
                          ? (0.05 + 0.9 * u(rng)) * ceiling
                          : 2.0 * u(rng) + 1e-3;
    const TransmitConfig cfg{pa, rho, rs};
    const double tp = metrics::tp(sc, n, cfg);
    const double sp = metrics::sop(sc, n, cfg);
    const double theta = metrics::theta_star(sc, n, pa, rho);
    const double co = metrics::cop(sc, n, pa, rho, theta);
    CHECK(tp >= 0.0);
    CHECK(tp <= 1.0);
    CHECK(sp >= 0.0);
    CHECK(sp <= 1.0);
    CHECK(co >= 0.0);
    CHECK(co <= 1.0);
  }

  // tp_pc and the ip worst-case cop increase with transmit power
  double prev_tp = 0.0, prev_cop = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double pa = 1e-3 * i;
    const double t = metrics::tp_pc(kRef, pa, 0.5);
    const double c = metrics::cop_at_optimal_theta(ScenarioId::ip(), kRef, pa, 1.0);
    CHECK(t > prev_tp);
    CHECK(c > prev_cop);
    prev_tp = t;
    prev_cop = c;
  }

  // sop_ip has no power dependence; both pc forms increase with rate
  CHECK(metrics::sop_ip(kRef, 0.8) == metrics::sop_ip(kRef, 0.8));
  double prev_ip = 0.0, prev_fp = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double rs = 0.1 * i;
    CHECK(metrics::sop_ip(kRef, rs) > prev_ip);
    CHECK(metrics::sop_fp(kRef, rs) > prev_fp);
    prev_ip = metrics::sop_ip(kRef, rs);
    prev_fp = metrics::sop_fp(kRef, rs);
  }
}
