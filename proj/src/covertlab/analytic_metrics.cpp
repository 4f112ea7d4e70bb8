#include "covertlab/analytic_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace covert::metrics {

namespace {

// P(sum of two unit-mean exponentials scaled by `scale` <= t) for t >= 0,
// i.e. the shape-2 gamma CDF 1 - (1 + u) e^-u with u = t/scale.
double gamma_shape2_cdf(double u) {
  if (u <= 0.0) return 0.0;
  if (u < 1e-8) return 0.5 * u * u;  // leading term; avoids full cancellation
  return -std::expm1(-u) - u * std::exp(-u);
}

double pow2m1(double rs) { return std::expm1(rs * std::numbers::ln2); }  // 2^rs - 1

// Shared pieces of the artificial-noise secrecy-outage integrals. The
// integrand is exp(A - B + N/D(s) - s); A - B and N/D are assembled inside
// one exponent because the two factors overflow separately as rho -> 1.
// The s-dependent part is evaluated as N/D(s) - N/D(0), which stays at its
// natural small magnitude; the constant A - B + N/D(0) is zero in exact
// arithmetic and merely carries the rounding of the big terms.
// attacker_n2 is sigma_e^2 (independence) or sigma_w^2 + sigma_e^2 (friend).
struct AnSopParts {
  double e_zero;    // A - B + N/D(0)
  double num;       // N
  double d_slope;   // coefficient of s in D
  double d_zero;    // D(0)
  double phi;       // upper limit of the conditioning region
  double cut;       // truncated integration limit (e^-s kills the tail)

  double exponent(double s) const {
    const double d = d_slope * s + d_zero;
    if (d <= 0.0) return -1e30;
    return e_zero - num * d_slope * s / (d * d_zero) - s;
  }
};

AnSopParts an_sop_parts(const NoiseProfile& noise, double pa, double rho,
                        double rs, double attacker_n2) {
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::invalid_argument("an sop: rho must be in (0, 1)");
  if (!(rs > 0.0))
    throw std::invalid_argument("an sop: rs must be > 0");
  const double two = std::exp2(rs);
  if (two * (1.0 - rho) >= 1.0)
    throw FeasibilityError("an sop: rate at or above the capacity ceiling, tp = 0");

  const double sb2 = noise.sigma_b2;
  const double n2 = attacker_n2;
  const double beta = two - 1.0;
  const double a = beta * sb2 / (rho * pa - beta * (1.0 - rho) * pa);
  const double b = (two + rho - 1.0) * sb2 / ((1.0 - two) * (1.0 - rho) * pa);
  const double num =
      (two + rho - 1.0) * (1.0 - (1.0 - rho) * two) * sb2 * n2 /
          ((1.0 - two) * (1.0 - rho)) -
      beta * sb2 * n2;
  const double d_slope = (1.0 - two) * (1.0 - rho) * pa * pa;
  const double d_zero = (1.0 - (1.0 - rho) * two) * pa * n2;
  const double phi = (1.0 - two * (1.0 - rho)) * n2 / (beta * (1.0 - rho) * pa);

  // The integrand is bounded by exp(-lambda0 * s) with lambda0 from the
  // slope of the exponent at 0, so the tail past ~120/lambda0 is dust.
  const double lambda0 = 1.0 + std::abs(num * d_slope) / (d_zero * d_zero);
  const double cut = std::min(phi, 2.0 + 120.0 / lambda0);

  return AnSopParts{a - b + num / d_zero, num, d_slope, d_zero, phi, cut};
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double tp_pc(const NoiseProfile& noise, double pa, double rs) {
  return std::exp(-pow2m1(rs) * noise.sigma_b2 / pa);
}

double tp_an(const NoiseProfile& noise, double pa, double rho, double rs) {
  const double two = std::exp2(rs);
  if (rho < 1.0 && two * (1.0 - rho) >= 1.0) return 0.0;
  const double beta = two - 1.0;
  return std::exp(-beta * noise.sigma_b2 / (rho * pa - beta * (1.0 - rho) * pa));
}

double sop_ip(const NoiseProfile& noise, double rs) {
  const double x = std::exp2(rs) * noise.sigma_b2;
  return x / (x + noise.sigma_e2);
}

double sop_fp(const NoiseProfile& noise, double rs) {
  const double x = std::exp2(rs) * noise.sigma_b2;
  const double c = noise.sigma_w2 + noise.sigma_e2;
  return x * (x + 2.0 * c) / ((x + c) * (x + c));
}

double sop_ia(const NoiseProfile& noise, double pa, double rho, double rs,
              const num::ToleranceSpec& tol) {
  const AnSopParts p = an_sop_parts(noise, pa, rho, rs, noise.sigma_e2);
  const double integral = num::integrate_1d(
      [&p](double y) {
        const double e = p.exponent(y);
        return e > -700.0 ? std::exp(e) : 0.0;
      },
      0.0, p.cut, tol);
  return clamp01(1.0 - integral);
}

double sop_fa(const NoiseProfile& noise, double pa, double rho, double rs,
              const num::ToleranceSpec& tol) {
  const double c = noise.sigma_w2 + noise.sigma_e2;
  const AnSopParts p = an_sop_parts(noise, pa, rho, rs, c);
  const double integral = num::integrate_triangle(
      [&p](double y, double z) {
        const double e = p.exponent(y + z);
        return e > -700.0 ? std::exp(e) : 0.0;
      },
      p.cut, tol);
  return clamp01(1.0 - integral);
}

double tp(ScenarioId sc, const NoiseProfile& noise, const TransmitConfig& cfg) {
  return sc.scheme == Scheme::PowerControl
             ? tp_pc(noise, cfg.pa, cfg.rs)
             : tp_an(noise, cfg.pa, cfg.rho, cfg.rs);
}

double sop(ScenarioId sc, const NoiseProfile& noise, const TransmitConfig& cfg,
           const num::ToleranceSpec& tol) {
  if (sc.scheme == Scheme::PowerControl)
    return sc.relationship == Relationship::Independence ? sop_ip(noise, cfg.rs)
                                                         : sop_fp(noise, cfg.rs);
  return sc.relationship == Relationship::Independence
             ? sop_ia(noise, cfg.pa, cfg.rho, cfg.rs, tol)
             : sop_fa(noise, cfg.pa, cfg.rho, cfg.rs, tol);
}

double theta_star(ScenarioId sc, const NoiseProfile& noise, double pa, double rho) {
  const bool friends = sc.relationship == Relationship::Friend;
  const double floor = friends ? noise.sigma_e2 + noise.sigma_w2 : noise.sigma_w2;
  if (sc.scheme == Scheme::PowerControl || rho >= 1.0)
    return floor + noise.upsilon;
  const double shift = (rho - 1.0) * pa * std::log1p(-rho) / rho;
  return floor + (friends ? 2.0 : 1.0) * shift;
}

DetectionErrors detection_errors(ScenarioId sc, const NoiseProfile& noise,
                                 double pa, double rho, double theta) {
  const bool friends = sc.relationship == Relationship::Friend;
  const bool an = sc.scheme == Scheme::ArtificialNoise;
  const double floor = friends ? noise.sigma_e2 + noise.sigma_w2 : noise.sigma_w2;
  if (theta <= floor) return DetectionErrors{1.0, 0.0};

  const double t = theta - floor;
  double p_md, p_fa;
  if (friends) {
    p_md = gamma_shape2_cdf(t / pa);  // transmit power sum over both antennas
    p_fa = (an && rho < 1.0)
               ? 1.0 - gamma_shape2_cdf(t / ((1.0 - rho) * pa))
               : 0.0;
  } else {
    p_md = -std::expm1(-t / pa);
    p_fa = (an && rho < 1.0) ? std::exp(-t / ((1.0 - rho) * pa)) : 0.0;
  }
  return DetectionErrors{p_fa, p_md};
}

double cop(ScenarioId sc, const NoiseProfile& noise, double pa, double rho,
           double theta) {
  const DetectionErrors de = detection_errors(sc, noise, pa, rho, theta);
  return 1.0 - (de.p_fa + de.p_md);
}

double cop_at_optimal_theta(ScenarioId sc, const NoiseProfile& noise,
                            double pa, double rho) {
  const bool friends = sc.relationship == Relationship::Friend;
  if (sc.scheme == Scheme::PowerControl || rho >= 1.0) {
    const double u = noise.upsilon / pa;
    return friends ? (1.0 + u) * std::exp(-u) : std::exp(-u);
  }
  const double lg = std::log1p(-rho);  // log(1 - rho)
  if (!friends)  // rho (1-rho)^((1-rho)/rho)
    return rho * std::exp((1.0 - rho) / rho * lg);
  const double u = -2.0 * (1.0 - rho) * lg / rho;
  const double v = -2.0 * lg / rho;
  return (1.0 + u) * std::exp(-u) - (1.0 + v) * std::exp(-v);
}

}  // namespace covert::metrics
