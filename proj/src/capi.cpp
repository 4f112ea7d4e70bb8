#include "covertlab.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "covertlab/analytic_metrics.hpp"
#include "covertlab/csr_solver.hpp"
#include "covertlab/emit.hpp"
#include "covertlab/link_model.hpp"
#include "covertlab/monte_carlo.hpp"
#include "covertlab/numerics.hpp"
#include "covertlab/sweep.hpp"

using namespace covert;

struct covertlab_sweep {
  sweep::SweepSpec spec;
  std::vector<sweep::ResultRow> rows;
  bool ran = false;
};

namespace {

thread_local std::string g_last_error;

covertlab_status fail(covertlab_status s, const char* what) {
  g_last_error = what;
  return s;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
covertlab_status guarded(const Fn& fn) {
  try {
    fn();
    return COVERTLAB_OK;
  } catch (const sweep::UnknownFigureError& e) {
    return fail(COVERTLAB_ERROR_UNKNOWN_ID, e.what());
  } catch (const sweep::ConfigError& e) {
    return fail(COVERTLAB_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const mc::StarvationError& e) {
    return fail(COVERTLAB_ERROR_STARVED, e.what());
  } catch (const num::ConvergenceError& e) {
    return fail(COVERTLAB_ERROR_NO_CONVERGENCE, e.what());
  } catch (const std::domain_error& e) {  // includes FeasibilityError
    return fail(COVERTLAB_ERROR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(COVERTLAB_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(COVERTLAB_ERROR_IO, e.what());
  } catch (const std::runtime_error& e) {
    // emitters report I/O trouble as runtime_error with path context
    return std::string(e.what()).find("cannot open") != std::string::npos ||
                   std::string(e.what()).find("write failed") != std::string::npos
               ? fail(COVERTLAB_ERROR_IO, e.what())
               : fail(COVERTLAB_ERROR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(COVERTLAB_ERROR_INTERNAL, e.what());
  }
}

ScenarioId to_scenario(covertlab_scenario sc) {
  switch (sc) {
    case COVERTLAB_SCENARIO_IP: return ScenarioId::ip();
    case COVERTLAB_SCENARIO_IA: return ScenarioId::ia();
    case COVERTLAB_SCENARIO_FP: return ScenarioId::fp();
    case COVERTLAB_SCENARIO_FA: return ScenarioId::fa();
  }
  throw std::invalid_argument("unknown scenario code");
}

covertlab_scenario from_scenario(ScenarioId sc) {
  if (sc == ScenarioId::ip()) return COVERTLAB_SCENARIO_IP;
  if (sc == ScenarioId::ia()) return COVERTLAB_SCENARIO_IA;
  if (sc == ScenarioId::fp()) return COVERTLAB_SCENARIO_FP;
  return COVERTLAB_SCENARIO_FA;
}

NoiseProfile to_noise(const covertlab_noise* n) {
  if (!n) throw std::invalid_argument("noise must not be null");
  NoiseProfile out{n->sigma_b2, n->sigma_w2, n->sigma_e2, n->upsilon};
  out.validate();
  return out;
}

SecurityConstraints to_constraints(const covertlab_constraints* c) {
  if (!c) throw std::invalid_argument("constraints must not be null");
  SecurityConstraints out{c->eps_c, c->eps_s, c->eps_t};
  out.validate();
  return out;
}

covertlab_solution from_solution(const solver::CsrSolution& s) {
  covertlab_solution out;
  out.csr = s.csr;
  out.rs_opt = s.rs_opt;
  out.power_opt = s.power_opt;
  out.regime = static_cast<int>(s.regime);
  out.tp = s.tp;
  out.cop = s.cop;
  out.sop = s.sop;
  return out;
}

covertlab_estimate from_estimate(const mc::McEstimate& e) {
  return covertlab_estimate{e.mean, e.half_width, e.n, e.seed};
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

extern "C" {

const char* covertlab_status_name(covertlab_status s) {
  switch (s) {
    case COVERTLAB_OK: return "ok";
    case COVERTLAB_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case COVERTLAB_ERROR_DOMAIN: return "domain_error";
    case COVERTLAB_ERROR_NO_CONVERGENCE: return "no_convergence";
    case COVERTLAB_ERROR_IO: return "io_error";
    case COVERTLAB_ERROR_UNKNOWN_ID: return "unknown_id";
    case COVERTLAB_ERROR_STARVED: return "conditioning_starved";
    case COVERTLAB_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown_status";
}

const char* covertlab_last_error(void) { return g_last_error.c_str(); }

double covertlab_db_to_linear(double x_db) { return db_to_linear(x_db); }

double covertlab_linear_to_db(double x) { return linear_to_db(x); }

covertlab_status covertlab_lambert_w0(double x, double* w) {
  return guarded([&] {
    require(w != nullptr, "w must not be null");
    *w = num::lambert_w0(x);
  });
}

covertlab_status covertlab_lambert_wm1(double x, double* w) {
  return guarded([&] {
    require(w != nullptr, "w must not be null");
    *w = num::lambert_wm1(x);
  });
}

covertlab_status covertlab_metrics(covertlab_scenario sc,
                                   const covertlab_noise* noise, double pa,
                                   double rho, double rs, double theta,
                                   covertlab_point_metrics* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    const ScenarioId id = to_scenario(sc);
    const NoiseProfile np = to_noise(noise);
    TransmitConfig cfg{pa, rho, rs};
    cfg.validate();
    const double th = std::isnan(theta)
                          ? metrics::theta_star(id, np, pa, rho)
                          : theta;
    const auto de = metrics::detection_errors(id, np, pa, rho, th);
    out->theta = th;
    out->tp = metrics::tp(id, np, cfg);
    out->sop = metrics::sop(id, np, cfg);
    out->cop = 1.0 - (de.p_fa + de.p_md);
    out->p_fa = de.p_fa;
    out->p_md = de.p_md;
  });
}

covertlab_status covertlab_theta_star(covertlab_scenario sc,
                                      const covertlab_noise* noise, double pa,
                                      double rho, double* theta) {
  return guarded([&] {
    require(theta != nullptr, "theta must not be null");
    *theta = metrics::theta_star(to_scenario(sc), to_noise(noise), pa, rho);
  });
}

covertlab_status covertlab_solve(covertlab_scenario sc,
                                 const covertlab_noise* noise, double pa,
                                 const covertlab_constraints* cons,
                                 covertlab_solution* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    const ScenarioId id = to_scenario(sc);
    std::optional<double> power;
    if (id.scheme == Scheme::ArtificialNoise) power = pa;
    *out = from_solution(
        solver::solve(id, to_noise(noise), power, to_constraints(cons)));
  });
}

covertlab_status covertlab_solve_reference(covertlab_scenario sc,
                                           const covertlab_noise* noise,
                                           double pa,
                                           const covertlab_constraints* cons,
                                           int grid_points,
                                           covertlab_solution* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    const ScenarioId id = to_scenario(sc);
    std::optional<double> power;
    if (id.scheme == Scheme::ArtificialNoise) power = pa;
    solver::GridSpec grid;
    if (grid_points > 0) grid.coarse = grid_points;
    *out = from_solution(solver::solve_reference(id, to_noise(noise), power,
                                                 to_constraints(cons), grid));
  });
}

covertlab_status covertlab_validate(covertlab_scenario sc,
                                    const covertlab_noise* noise, double pa,
                                    double rho, double rs, uint64_t n,
                                    uint64_t seed, double analytic_bias,
                                    covertlab_validation* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    TransmitConfig cfg{pa, rho, rs};
    cfg.validate();
    const auto report = mc::validate_scenario(to_scenario(sc), to_noise(noise),
                                              cfg, n, seed, analytic_bias);
    const auto convert = [](const mc::Comparison& c) {
      return covertlab_check{c.analytic, from_estimate(c.estimate),
                             c.pass ? 1 : 0};
    };
    out->tp = convert(report.checks[0]);
    out->sop = convert(report.checks[1]);
    out->cop = convert(report.checks[2]);
    out->theta_star = report.theta_star;
    out->pass = report.pass ? 1 : 0;
  });
}

covertlab_status covertlab_sweep_from_config_text(const char* text,
                                                  covertlab_sweep** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "text/out must not be null");
    auto handle = std::make_unique<covertlab_sweep>();
    handle->spec = sweep::parse_config(text);
    *out = handle.release();
  });
}

covertlab_status covertlab_sweep_from_config(const char* path,
                                             covertlab_sweep** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path/out must not be null");
    auto handle = std::make_unique<covertlab_sweep>();
    handle->spec = sweep::load_config(path);
    *out = handle.release();
  });
}

covertlab_status covertlab_sweep_from_figure(const char* figure_id,
                                             covertlab_sweep** out) {
  return guarded([&] {
    require(figure_id != nullptr && out != nullptr, "id/out must not be null");
    auto handle = std::make_unique<covertlab_sweep>();
    handle->spec = sweep::figure_recipe(figure_id);
    *out = handle.release();
  });
}

const char* covertlab_figure_ids(void) {
  static const std::string joined = [] {
    std::string s;
    for (const auto& id : sweep::figure_ids()) {
      if (!s.empty()) s += '\n';
      s += id;
    }
    return s;
  }();
  return joined.c_str();
}

covertlab_status covertlab_sweep_set_validation(covertlab_sweep* sweep_handle,
                                                uint64_t n, uint64_t seed) {
  return guarded([&] {
    require(sweep_handle != nullptr, "sweep must not be null");
    sweep_handle->spec.validation = sweep::McSettings{n, seed};
  });
}

covertlab_status covertlab_sweep_run(covertlab_sweep* sweep_handle) {
  return guarded([&] {
    require(sweep_handle != nullptr, "sweep must not be null");
    sweep_handle->rows = sweep::run_sweep(sweep_handle->spec);
    sweep_handle->ran = true;
  });
}

size_t covertlab_sweep_row_count(const covertlab_sweep* sweep_handle) {
  return sweep_handle ? sweep_handle->rows.size() : 0;
}

covertlab_status covertlab_sweep_row(const covertlab_sweep* sweep_handle,
                                     size_t index, covertlab_result_row* out) {
  return guarded([&] {
    require(sweep_handle != nullptr && out != nullptr, "sweep/out must not be null");
    require(index < sweep_handle->rows.size(), "row index out of range");
    const sweep::ResultRow& r = sweep_handle->rows[index];
    std::memset(out, 0, sizeof(*out));
    out->scenario = from_scenario(r.scenario);
    std::snprintf(out->series, sizeof(out->series), "%s", r.series_label.c_str());
    out->sigma_b_db = r.sigma_b_db;
    out->sigma_b2 = r.sigma_b2;
    out->sigma_w_db = r.sigma_w_db;
    out->sigma_w2 = r.sigma_w2;
    out->sigma_e_db = r.sigma_e_db;
    out->sigma_e2 = r.sigma_e2;
    out->upsilon = r.upsilon;
    out->pa_db = r.pa_db.value_or(std::nan(""));
    out->pa = r.pa.value_or(std::nan(""));
    out->eps_c = r.eps_c;
    out->eps_s = r.eps_s;
    out->eps_t = r.eps_t;
    out->axis_value = r.axis_value;
    out->solution = from_solution(r.sol);
    out->has_mc = r.has_mc ? 1 : 0;
    if (r.has_mc) {
      out->mc_tp = covertlab_estimate{r.mc_tp.mean, r.mc_tp.half_width, 0, 0};
      out->mc_sop = covertlab_estimate{r.mc_sop.mean, r.mc_sop.half_width, 0, 0};
      out->mc_cop = covertlab_estimate{r.mc_cop.mean, r.mc_cop.half_width, 0, 0};
      out->mc_tp_pass = r.mc_tp.pass ? 1 : 0;
      out->mc_sop_pass = r.mc_sop.pass ? 1 : 0;
      out->mc_cop_pass = r.mc_cop.pass ? 1 : 0;
    }
  });
}

size_t covertlab_sweep_mc_failures(const covertlab_sweep* sweep_handle) {
  if (!sweep_handle) return 0;
  size_t failures = 0;
  for (const auto& r : sweep_handle->rows)
    if (r.has_mc && !(r.mc_tp.pass && r.mc_sop.pass && r.mc_cop.pass)) ++failures;
  return failures;
}

covertlab_status covertlab_sweep_write_csv(const covertlab_sweep* sweep_handle,
                                           const char* path) {
  return guarded([&] {
    require(sweep_handle != nullptr && path != nullptr, "sweep/path must not be null");
    require(sweep_handle->ran, "sweep has not been run");
    sweep::emit_csv(sweep_handle->rows, sweep_handle->spec, std::string(path));
  });
}

covertlab_status covertlab_sweep_write_svg(const covertlab_sweep* sweep_handle,
                                           const char* path) {
  return guarded([&] {
    require(sweep_handle != nullptr && path != nullptr, "sweep/path must not be null");
    require(sweep_handle->ran, "sweep has not been run");
    sweep::emit_svg(sweep_handle->rows, sweep_handle->spec, std::string(path));
  });
}

void covertlab_sweep_free(covertlab_sweep* sweep_handle) { delete sweep_handle; }

}  // extern "C"
