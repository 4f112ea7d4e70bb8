/* covertlab — covert + secure wireless link metrics and rate optimization.
 *
 * C API over the C++ core. Every function returns a covertlab_status;
 * outputs go through pointers. On failure covertlab_last_error() carries a
 * human-readable message (thread-local). Sweeps are opaque handles.
 */
#ifndef COVERTLAB_H
#define COVERTLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covertlab_status {
  COVERTLAB_OK = 0,
  COVERTLAB_ERROR_INVALID_ARGUMENT = 1,
  COVERTLAB_ERROR_DOMAIN = 2,
  COVERTLAB_ERROR_NO_CONVERGENCE = 3,
  COVERTLAB_ERROR_IO = 4,
  COVERTLAB_ERROR_UNKNOWN_ID = 5,
  COVERTLAB_ERROR_STARVED = 6,
  COVERTLAB_ERROR_INTERNAL = 7
} covertlab_status;

typedef enum covertlab_scenario {
  COVERTLAB_SCENARIO_IP = 0, /* independent attackers, power control   */
  COVERTLAB_SCENARIO_IA = 1, /* independent attackers, artificial noise */
  COVERTLAB_SCENARIO_FP = 2, /* colluding attackers, power control     */
  COVERTLAB_SCENARIO_FA = 3  /* colluding attackers, artificial noise  */
} covertlab_scenario;

typedef enum covertlab_regime {
  COVERTLAB_REGIME_STATIONARY = 0,
  COVERTLAB_REGIME_SECRECY_BOUND = 1,
  COVERTLAB_REGIME_TRANSMISSION_BOUND = 2,
  COVERTLAB_REGIME_INFEASIBLE = 3
} covertlab_regime;

/* Linear-scale noise powers plus the detection margin upsilon. */
typedef struct covertlab_noise {
  double sigma_b2;
  double sigma_w2;
  double sigma_e2;
  double upsilon;
} covertlab_noise;

/* Bounds: cop <= eps_c, sop <= eps_s, tp >= 1 - eps_t. */
typedef struct covertlab_constraints {
  double eps_c;
  double eps_s;
  double eps_t;
} covertlab_constraints;

typedef struct covertlab_point_metrics {
  double theta; /* detection threshold the values were computed at */
  double tp;
  double sop;
  double cop;
  double p_fa;
  double p_md;
} covertlab_point_metrics;

typedef struct covertlab_solution {
  double csr;
  double rs_opt;
  double power_opt; /* optimal transmit power (pc) or power split rho (an) */
  int regime;       /* covertlab_regime */
  double tp;
  double cop;
  double sop;
} covertlab_solution;

typedef struct covertlab_estimate {
  double mean;
  double half_width; /* 95% confidence */
  uint64_t n;
  uint64_t seed;
} covertlab_estimate;

typedef struct covertlab_check {
  double analytic;
  covertlab_estimate estimate;
  int pass; /* |analytic - mean| <= 3 half-widths */
} covertlab_check;

typedef struct covertlab_validation {
  covertlab_check tp;
  covertlab_check sop;
  covertlab_check cop;
  double theta_star;
  int pass;
} covertlab_validation;

const char* covertlab_status_name(covertlab_status s);
const char* covertlab_last_error(void);

double covertlab_db_to_linear(double x_db);
double covertlab_linear_to_db(double x);

covertlab_status covertlab_lambert_w0(double x, double* w);
covertlab_status covertlab_lambert_wm1(double x, double* w);

/* Analytic tp/sop/cop at one operating point. rho is ignored by the
 * power-control scenarios (pass 1.0). theta = NAN selects the detector's
 * optimal threshold. */
covertlab_status covertlab_metrics(covertlab_scenario sc,
                                   const covertlab_noise* noise, double pa,
                                   double rho, double rs, double theta,
                                   covertlab_point_metrics* out);

covertlab_status covertlab_theta_star(covertlab_scenario sc,
                                      const covertlab_noise* noise, double pa,
                                      double rho, double* theta);

/* Covert secrecy rate. pa is required (> 0) for the artificial-noise
 * scenarios and ignored otherwise. Infeasible problems come back with
 * regime = COVERTLAB_REGIME_INFEASIBLE and csr = 0, not an error. */
covertlab_status covertlab_solve(covertlab_scenario sc,
                                 const covertlab_noise* noise, double pa,
                                 const covertlab_constraints* cons,
                                 covertlab_solution* out);

/* Brute-force reference optimizer (grid >= 200 per axis + refinement). */
covertlab_status covertlab_solve_reference(covertlab_scenario sc,
                                           const covertlab_noise* noise,
                                           double pa,
                                           const covertlab_constraints* cons,
                                           int grid_points,
                                           covertlab_solution* out);

/* Monte Carlo cross-check of the analytic metrics at one operating point.
 * analytic_bias shifts the analytic values before comparison; it exists so
 * callers can prove the harness detects a broken formula (use 0.0). */
covertlab_status covertlab_validate(covertlab_scenario sc,
                                    const covertlab_noise* noise, double pa,
                                    double rho, double rs, uint64_t n,
                                    uint64_t seed, double analytic_bias,
                                    covertlab_validation* out);

/* ---- sweeps ---- */

typedef struct covertlab_sweep covertlab_sweep;

typedef struct covertlab_result_row {
  int scenario; /* covertlab_scenario */
  char series[64];
  double sigma_b_db, sigma_b2;
  double sigma_w_db, sigma_w2;
  double sigma_e_db, sigma_e2;
  double upsilon;
  double pa_db, pa; /* NAN when the sweep fixes no transmit power */
  double eps_c, eps_s, eps_t;
  double axis_value;
  covertlab_solution solution;
  int has_mc;
  covertlab_estimate mc_tp, mc_sop, mc_cop;
  int mc_tp_pass, mc_sop_pass, mc_cop_pass;
} covertlab_result_row;

/* Build a sweep from flat `key = value` config text or a config file. */
covertlab_status covertlab_sweep_from_config_text(const char* text,
                                                  covertlab_sweep** out);
covertlab_status covertlab_sweep_from_config(const char* path,
                                             covertlab_sweep** out);
/* Bundled figure recipes (fig2_ip .. fig10_fri_et). */
covertlab_status covertlab_sweep_from_figure(const char* figure_id,
                                             covertlab_sweep** out);
/* Newline-separated list of known figure ids. */
const char* covertlab_figure_ids(void);

/* Per-row Monte Carlo validation columns; n = 0 disables them. */
covertlab_status covertlab_sweep_set_validation(covertlab_sweep* sweep,
                                                uint64_t n, uint64_t seed);

covertlab_status covertlab_sweep_run(covertlab_sweep* sweep);
size_t covertlab_sweep_row_count(const covertlab_sweep* sweep);
covertlab_status covertlab_sweep_row(const covertlab_sweep* sweep, size_t index,
                                     covertlab_result_row* out);
/* Rows whose Monte Carlo cross-check failed (0 when validation is off). */
size_t covertlab_sweep_mc_failures(const covertlab_sweep* sweep);

/* path "-" writes to stdout. */
covertlab_status covertlab_sweep_write_csv(const covertlab_sweep* sweep,
                                           const char* path);
covertlab_status covertlab_sweep_write_svg(const covertlab_sweep* sweep,
                                           const char* path);

void covertlab_sweep_free(covertlab_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* COVERTLAB_H */
