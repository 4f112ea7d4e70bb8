#pragma once

#include <optional>
#include <string_view>

#include "covertlab/link_model.hpp"

namespace covert::solver {

/// Which constraint (if any) pins the optimal secrecy rate.
enum class Regime { Stationary, SecrecyBound, TransmissionBound, Infeasible };

std::string_view regime_name(Regime r);
std::optional<Regime> parse_regime(std::string_view text);

/// Solution of the covert-secrecy-rate problem. power_opt is the optimal
/// transmit power (power-control schemes) or the optimal message power
/// fraction rho (artificial-noise schemes). csr == rs_opt * tp when
/// feasible and 0 otherwise.
struct CsrSolution {
  double csr = 0.0;
  double rs_opt = 0.0;
  double power_opt = 0.0;
  Regime regime = Regime::Infeasible;
  double tp = 0.0;
  double cop = 0.0;
  double sop = 0.0;

  bool feasible() const { return regime != Regime::Infeasible; }
};

/// The three rate candidates the optimum is selected from. r_sop or r_tp
/// at or below zero signals an empty feasible rate region.
struct RsCandidates {
  double r_stationary;
  double r_sop;
  double r_tp;
};

CsrSolution solve_ip(const NoiseProfile& noise, const SecurityConstraints& cons);
CsrSolution solve_fp(const NoiseProfile& noise, const SecurityConstraints& cons);
CsrSolution solve_ia(const NoiseProfile& noise, double pa,
                     const SecurityConstraints& cons);
CsrSolution solve_fa(const NoiseProfile& noise, double pa,
                     const SecurityConstraints& cons);

/// Dispatch over the scenario taxonomy. pa is required for the
/// artificial-noise scenarios and ignored otherwise.
CsrSolution solve(ScenarioId sc, const NoiseProfile& noise,
                  std::optional<double> pa, const SecurityConstraints& cons);

/// Grid density for the reference optimizer. coarse points per decision
/// axis (>= 200), refine x refine cells per zoom pass.
struct GridSpec {
  int coarse = 201;
  int refine = 21;
  int passes = 4;
};

/// Brute-force reference: exhaustive objective evaluation over the 2-D
/// decision grid with constraint screening, then local refinement around
/// the best cell. Deterministic; independent of the closed-form solvers.
/// grid_stage_csr, when given, receives the pre-refinement optimum.
CsrSolution solve_reference(ScenarioId sc, const NoiseProfile& noise,
                            std::optional<double> pa,
                            const SecurityConstraints& cons,
                            const GridSpec& grid = {},
                            double* grid_stage_csr = nullptr);

}  // namespace covert::solver
