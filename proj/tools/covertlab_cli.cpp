// covertlab command-line front end. Talks to the shared library through the
// C API only; exit codes: 0 ok, 1 configuration/usage error, 2 validation
// failure.
#include <cmath>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "covertlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;

struct NoiseArgs {
  double sigma_b_db = -20.0;
  double sigma_w_db = 0.0;
  double sigma_e_db = 0.0;
  double upsilon = 0.01;

  covertlab_noise linear() const {
    return covertlab_noise{covertlab_db_to_linear(sigma_b_db),
                           covertlab_db_to_linear(sigma_w_db),
                           covertlab_db_to_linear(sigma_e_db), upsilon};
  }
};

void add_noise_flags(CLI::App* cmd, NoiseArgs& args) {
  cmd->add_option("--sigma-b-db", args.sigma_b_db, "noise power at the receiver, dB");
  cmd->add_option("--sigma-w-db", args.sigma_w_db, "noise power at the detector, dB");
  cmd->add_option("--sigma-e-db", args.sigma_e_db, "noise power at the eavesdropper, dB");
  cmd->add_option("--upsilon", args.upsilon, "detection margin (linear)");
}

int parse_scenario(const std::string& text, covertlab_scenario* out) {
  if (text == "ip") { *out = COVERTLAB_SCENARIO_IP; return 0; }
  if (text == "ia") { *out = COVERTLAB_SCENARIO_IA; return 0; }
  if (text == "fp") { *out = COVERTLAB_SCENARIO_FP; return 0; }
  if (text == "fa") { *out = COVERTLAB_SCENARIO_FA; return 0; }
  std::fprintf(stderr, "error: unknown scenario '%s' (expected ip|ia|fp|fa)\n",
               text.c_str());
  return -1;
}

const char* regime_name(int regime) {
  switch (regime) {
    case COVERTLAB_REGIME_STATIONARY: return "stationary";
    case COVERTLAB_REGIME_SECRECY_BOUND: return "secrecy_bound";
    case COVERTLAB_REGIME_TRANSMISSION_BOUND: return "transmission_bound";
    default: return "infeasible";
  }
}

int report_error(covertlab_status status) {
  std::fprintf(stderr, "error (%s): %s\n", covertlab_status_name(status),
               covertlab_last_error());
  return kExitConfig;
}

int run_sweep_handle(covertlab_sweep* sweep, const std::string& out_csv,
                     const std::string& out_svg, bool quiet) {
  covertlab_status st = covertlab_sweep_run(sweep);
  if (st != COVERTLAB_OK) {
    covertlab_sweep_free(sweep);
    return report_error(st);
  }
  if (!out_csv.empty()) {
    st = covertlab_sweep_write_csv(sweep, out_csv.c_str());
    if (st != COVERTLAB_OK) {
      covertlab_sweep_free(sweep);
      return report_error(st);
    }
    if (out_csv != "-" && !quiet)
      std::printf("wrote %zu rows to %s\n", covertlab_sweep_row_count(sweep),
                  out_csv.c_str());
  }
  if (!out_svg.empty()) {
    st = covertlab_sweep_write_svg(sweep, out_svg.c_str());
    if (st != COVERTLAB_OK) {
      covertlab_sweep_free(sweep);
      return report_error(st);
    }
    if (!quiet) std::printf("wrote plot to %s\n", out_svg.c_str());
  }
  if (out_csv.empty() && out_svg.empty()) {
    covertlab_status pst = covertlab_sweep_write_csv(sweep, "-");
    if (pst != COVERTLAB_OK) {
      covertlab_sweep_free(sweep);
      return report_error(pst);
    }
  }
  const size_t failures = covertlab_sweep_mc_failures(sweep);
  covertlab_sweep_free(sweep);
  if (failures > 0) {
    std::fprintf(stderr, "validation failed on %zu rows\n", failures);
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covert + secure wireless link metrics and rate optimization"};
  app.require_subcommand(1);

  // ---- metrics ----
  auto* metrics_cmd =
      app.add_subcommand("metrics", "analytic tp/sop/cop at one operating point");
  NoiseArgs m_noise;
  std::string m_scenario = "ip";
  double m_pa_db = -20.0, m_rho = 1.0, m_rs = 0.25;
  double m_theta = std::nan("");
  add_noise_flags(metrics_cmd, m_noise);
  metrics_cmd->add_option("--scenario", m_scenario, "ip|ia|fp|fa")->required();
  metrics_cmd->add_option("--pa-db", m_pa_db, "transmit power, dB");
  metrics_cmd->add_option("--rho", m_rho, "message power fraction (an schemes)");
  metrics_cmd->add_option("--rs", m_rs, "target secrecy rate, bits/use");
  metrics_cmd->add_option("--theta", m_theta,
                          "detection threshold (linear); default: optimal");

  // ---- csr ----
  auto* csr_cmd = app.add_subcommand("csr", "solve for the covert secrecy rate");
  NoiseArgs c_noise;
  std::string c_scenario = "ip";
  double c_pa_db = -20.0, c_eps_c = 0.1, c_eps_s = 0.1, c_eps_t = 0.1;
  bool c_reference = false;
  int c_grid = 0;
  add_noise_flags(csr_cmd, c_noise);
  csr_cmd->add_option("--scenario", c_scenario, "ip|ia|fp|fa")->required();
  csr_cmd->add_option("--pa-db", c_pa_db, "transmit power, dB (an schemes)");
  csr_cmd->add_option("--eps-c", c_eps_c, "covertness outage bound")->required();
  csr_cmd->add_option("--eps-s", c_eps_s, "secrecy outage bound")->required();
  csr_cmd->add_option("--eps-t", c_eps_t, "transmission probability slack")->required();
  csr_cmd->add_flag("--reference", c_reference,
                    "use the brute-force grid optimizer instead");
  csr_cmd->add_option("--grid", c_grid, "reference grid points per axis (>= 200)");

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  std::string s_config, s_out, s_svg, s_axis, s_series, s_scenarios;
  std::vector<std::string> s_sets;
  std::uint64_t s_validate_n = 0, s_validate_seed = 0;
  sweep_cmd->add_option("--config", s_config, "sweep config file (key = value)");
  sweep_cmd->add_option("--scenario", s_scenarios, "comma list: ip,ia,fp,fa");
  sweep_cmd->add_option("--axis", s_axis, "param=start:stop:steps[:spacing]");
  sweep_cmd->add_option("--series", s_series, "param=v1,v2,...");
  sweep_cmd->add_option("--set", s_sets, "fixed parameter, e.g. --set eps_s=0.1");
  sweep_cmd->add_option("--validate-n", s_validate_n, "Monte Carlo samples per row");
  sweep_cmd->add_option("--validate-seed", s_validate_seed, "Monte Carlo seed");
  sweep_cmd->add_option("--out", s_out, "CSV destination ('-' for stdout)");
  sweep_cmd->add_option("--svg", s_svg, "SVG destination");

  // ---- figure ----
  auto* figure_cmd =
      app.add_subcommand("figure", "run a bundled figure recipe");
  std::string f_id, f_out, f_svg;
  std::uint64_t f_validate_n = 0, f_validate_seed = 0;
  bool f_list = false;
  figure_cmd->add_option("id", f_id, "figure id, e.g. fig8_pc");
  figure_cmd->add_flag("--list", f_list, "list known figure ids");
  figure_cmd->add_option("--out", f_out, "CSV destination ('-' for stdout)");
  figure_cmd->add_option("--svg", f_svg, "SVG destination");
  figure_cmd->add_option("--validate-n", f_validate_n, "Monte Carlo samples per row");
  figure_cmd->add_option("--validate-seed", f_validate_seed, "Monte Carlo seed");

  // ---- validate ----
  auto* validate_cmd = app.add_subcommand(
      "validate", "Monte Carlo cross-check of the analytic metrics");
  NoiseArgs v_noise;
  std::string v_scenario = "ip";
  double v_pa_db = -20.0, v_rho = 1.0, v_rs = 0.25, v_bias = 0.0;
  std::uint64_t v_samples = 1000000, v_seed = 1;
  add_noise_flags(validate_cmd, v_noise);
  validate_cmd->add_option("--scenario", v_scenario, "ip|ia|fp|fa")->required();
  validate_cmd->add_option("--pa-db", v_pa_db, "transmit power, dB");
  validate_cmd->add_option("--rho", v_rho, "message power fraction (an schemes)");
  validate_cmd->add_option("--rs", v_rs, "target secrecy rate, bits/use");
  validate_cmd->add_option("--samples", v_samples, "Monte Carlo sample count");
  validate_cmd->add_option("--seed", v_seed, "Monte Carlo seed");
  validate_cmd->add_option("--inject-bias", v_bias,
                           "shift analytic values (harness self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (metrics_cmd->parsed()) {
    covertlab_scenario sc;
    if (parse_scenario(m_scenario, &sc) != 0) return kExitConfig;
    const covertlab_noise noise = m_noise.linear();
    covertlab_point_metrics out;
    const covertlab_status st = covertlab_metrics(
        sc, &noise, covertlab_db_to_linear(m_pa_db), m_rho, m_rs, m_theta, &out);
    if (st != COVERTLAB_OK) return report_error(st);
    std::printf("scenario = %s\n", m_scenario.c_str());
    std::printf("theta    = %.12g\n", out.theta);
    std::printf("tp       = %.12g\n", out.tp);
    std::printf("sop      = %.12g\n", out.sop);
    std::printf("cop      = %.12g\n", out.cop);
    std::printf("p_fa     = %.12g\n", out.p_fa);
    std::printf("p_md     = %.12g\n", out.p_md);
    return kExitOk;
  }

  if (csr_cmd->parsed()) {
    covertlab_scenario sc;
    if (parse_scenario(c_scenario, &sc) != 0) return kExitConfig;
    const covertlab_noise noise = c_noise.linear();
    const covertlab_constraints cons{c_eps_c, c_eps_s, c_eps_t};
    covertlab_solution sol;
    const double pa = covertlab_db_to_linear(c_pa_db);
    const covertlab_status st =
        c_reference
            ? covertlab_solve_reference(sc, &noise, pa, &cons, c_grid, &sol)
            : covertlab_solve(sc, &noise, pa, &cons, &sol);
    if (st != COVERTLAB_OK) return report_error(st);
    std::printf("scenario  = %s\n", c_scenario.c_str());
    std::printf("csr       = %.12g\n", sol.csr);
    std::printf("rs_opt    = %.12g\n", sol.rs_opt);
    std::printf("power_opt = %.12g\n", sol.power_opt);
    std::printf("regime    = %s\n", regime_name(sol.regime));
    std::printf("tp        = %.12g\n", sol.tp);
    std::printf("cop       = %.12g\n", sol.cop);
    std::printf("sop       = %.12g\n", sol.sop);
    return kExitOk;
  }

  if (sweep_cmd->parsed()) {
    covertlab_sweep* sweep = nullptr;
    covertlab_status st;
    if (!s_config.empty()) {
      st = covertlab_sweep_from_config(s_config.c_str(), &sweep);
    } else {
      // assemble config text from the flags
      std::string text;
      if (!s_scenarios.empty()) text += "scenario = " + s_scenarios + "\n";
      if (!s_axis.empty()) {
        const auto eq = s_axis.find('=');
        if (eq == std::string::npos) {
          std::fprintf(stderr, "error: --axis expects param=start:stop:steps[:spacing]\n");
          return kExitConfig;
        }
        text += "axis." + s_axis.substr(0, eq) + " = " + s_axis.substr(eq + 1) + "\n";
      }
      if (!s_series.empty()) {
        const auto eq = s_series.find('=');
        if (eq == std::string::npos) {
          std::fprintf(stderr, "error: --series expects param=v1,v2,...\n");
          return kExitConfig;
        }
        text += "series." + s_series.substr(0, eq) + " = " + s_series.substr(eq + 1) + "\n";
      }
      for (const auto& kv : s_sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          std::fprintf(stderr, "error: --set expects key=value\n");
          return kExitConfig;
        }
        text += kv.substr(0, eq) + " = " + kv.substr(eq + 1) + "\n";
      }
      if (s_validate_n > 0) {
        text += "validate.n = " + std::to_string(s_validate_n) + "\n";
        text += "validate.seed = " + std::to_string(s_validate_seed) + "\n";
      }
      st = covertlab_sweep_from_config_text(text.c_str(), &sweep);
    }
    if (st != COVERTLAB_OK) return report_error(st);
    return run_sweep_handle(sweep, s_out, s_svg, false);
  }

  if (figure_cmd->parsed()) {
    if (f_list) {
      std::printf("%s\n", covertlab_figure_ids());
      return kExitOk;
    }
    if (f_id.empty()) {
      std::fprintf(stderr, "error: missing figure id (try --list)\n");
      return kExitConfig;
    }
    covertlab_sweep* sweep = nullptr;
    covertlab_status st = covertlab_sweep_from_figure(f_id.c_str(), &sweep);
    if (st != COVERTLAB_OK) return report_error(st);
    if (f_validate_n > 0) {
      st = covertlab_sweep_set_validation(sweep, f_validate_n, f_validate_seed);
      if (st != COVERTLAB_OK) {
        covertlab_sweep_free(sweep);
        return report_error(st);
      }
    }
    return run_sweep_handle(sweep, f_out, f_svg, false);
  }

  if (validate_cmd->parsed()) {
    covertlab_scenario sc;
    if (parse_scenario(v_scenario, &sc) != 0) return kExitConfig;
    const covertlab_noise noise = v_noise.linear();
    covertlab_validation out;
    const covertlab_status st =
        covertlab_validate(sc, &noise, covertlab_db_to_linear(v_pa_db), v_rho,
                           v_rs, v_samples, v_seed, v_bias, &out);
    if (st != COVERTLAB_OK) return report_error(st);
    std::printf("scenario = %s, theta* = %.12g, n = %llu, seed = %llu\n",
                v_scenario.c_str(), out.theta_star,
                static_cast<unsigned long long>(v_samples),
                static_cast<unsigned long long>(v_seed));
    const auto show = [](const char* name, const covertlab_check& c) {
      std::printf("%-4s analytic=%.8f mc=%.8f half_width=%.8f -> %s\n", name,
                  c.analytic, c.estimate.mean, c.estimate.half_width,
                  c.pass ? "pass" : "FAIL");
    };
    show("tp", out.tp);
    show("sop", out.sop);
    show("cop", out.cop);
    if (!out.pass) return kExitValidation;
    return kExitOk;
  }

  return kExitConfig;
}
