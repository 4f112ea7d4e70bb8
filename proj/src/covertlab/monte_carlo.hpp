#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "covertlab/link_model.hpp"

namespace covert::mc {

/// Empirical probability with a 95% confidence half-width.
struct McEstimate {
  double mean;
  double half_width;
  std::uint64_t n;
  std::uint64_t seed;
};

/// Thrown when rejection sampling cannot collect enough conditioned
/// samples (acceptance rate below 1%).
class StarvationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |analytic - estimate.mean| <= 3 * half_width (plus a rounding cushion).
bool three_sigma_pass(double analytic, const McEstimate& est);

/// Fraction of channel draws whose link capacity supports cfg.rs.
McEstimate estimate_tp(ScenarioId sc, const NoiseProfile& noise,
                       const TransmitConfig& cfg, std::uint64_t n,
                       std::uint64_t seed);

/// Fraction of secrecy outages among draws accepted by the transmit rule
/// (rejection sampling on the conditioning event).
McEstimate estimate_sop(ScenarioId sc, const NoiseProfile& noise,
                        const TransmitConfig& cfg, std::uint64_t n,
                        std::uint64_t seed);

struct DetectionEstimate {
  McEstimate p_fa;
  McEstimate p_md;
  McEstimate cop;  // 1 - (p_fa + p_md), half-widths combined in quadrature
};

/// Simulates the silent and transmit hypotheses on independently seeded
/// streams and thresholds the mean received power at the detector.
DetectionEstimate estimate_detection(ScenarioId sc, const NoiseProfile& noise,
                                     const TransmitConfig& cfg, double theta,
                                     std::uint64_t n, std::uint64_t seed);

struct Comparison {
  std::string metric;
  double analytic;
  McEstimate estimate;
  bool pass;
};

struct ValidationReport {
  std::array<Comparison, 3> checks;  // tp, sop, cop at the optimal threshold
  double theta_star;
  bool pass;
};

/// Compares the analytic tp/sop/cop against Monte Carlo at the detector's
/// optimal threshold. analytic_bias shifts every analytic value before the
/// comparison; nonzero values exist to prove the harness trips.
ValidationReport validate_scenario(ScenarioId sc, const NoiseProfile& noise,
                                   const TransmitConfig& cfg, std::uint64_t n,
                                   std::uint64_t seed,
                                   double analytic_bias = 0.0);

}  // namespace covert::mc
