#pragma once

#include <stdexcept>

#include "covertlab/link_model.hpp"
#include "covertlab/numerics.hpp"

namespace covert::metrics {

/// Thrown when a conditional metric is requested at a configuration whose
/// conditioning event has probability zero (rate at or above the
/// artificial-noise capacity ceiling).
class FeasibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct DetectionErrors {
  double p_fa;  // false alarm
  double p_md;  // missed detection
};

/// Transmission probability under power control:
/// exp(-(2^rs - 1) sigma_b^2 / pa). In (0, 1].
double tp_pc(const NoiseProfile& noise, double pa, double rs);

/// Transmission probability under the artificial-noise split. The link
/// capacity is capped at log2(1/(1-rho)) no matter how strong the channel
/// gets, so rates at or above the cap return exactly 0.
double tp_an(const NoiseProfile& noise, double pa, double rho, double rs);

/// Secrecy outage probability, independence relationship, power control.
/// Closed form 2^rs sigma_b^2 / (2^rs sigma_b^2 + sigma_e^2); free of pa.
double sop_ip(const NoiseProfile& noise, double rs);

/// Secrecy outage probability, friend relationship, power control. The two
/// attackers pool their signals, giving x(x + 2c)/(x + c)^2 with
/// x = 2^rs sigma_b^2 and c = sigma_w^2 + sigma_e^2.
double sop_fp(const NoiseProfile& noise, double rs);

/// Secrecy outage probability, independence relationship, artificial
/// noise. Quadrature-backed single integral; requires rs > 0 strictly
/// below the capacity ceiling (FeasibilityError otherwise).
double sop_ia(const NoiseProfile& noise, double pa, double rho, double rs,
              const num::ToleranceSpec& tol = num::kQuadTol);

/// Secrecy outage probability, friend relationship, artificial noise.
/// Double integral over the triangle y + z <= Phi.
double sop_fa(const NoiseProfile& noise, double pa, double rho, double rs,
              const num::ToleranceSpec& tol = num::kQuadTol);

/// Dispatch helpers over the scenario taxonomy.
double tp(ScenarioId sc, const NoiseProfile& noise, const TransmitConfig& cfg);
double sop(ScenarioId sc, const NoiseProfile& noise, const TransmitConfig& cfg,
           const num::ToleranceSpec& tol = num::kQuadTol);

/// Detector-optimal threshold. rho enters only for the artificial-noise
/// scenarios; at rho = 1 the noise split degenerates and the power-control
/// threshold applies.
double theta_star(ScenarioId sc, const NoiseProfile& noise, double pa, double rho);

/// False-alarm / missed-detection pair at an arbitrary threshold.
DetectionErrors detection_errors(ScenarioId sc, const NoiseProfile& noise,
                                 double pa, double rho, double theta);

/// Covertness outage probability 1 - (p_fa + p_md) at the given threshold.
double cop(ScenarioId sc, const NoiseProfile& noise, double pa, double rho,
           double theta);

/// Worst-case COP: the value at the detector-optimal threshold. A function
/// of pa alone for the power-control scenarios and of rho alone for the
/// artificial-noise ones; strictly increasing in its decision variable.
double cop_at_optimal_theta(ScenarioId sc, const NoiseProfile& noise,
                            double pa, double rho);

}  // namespace covert::metrics
