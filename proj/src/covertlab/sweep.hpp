#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covertlab/csr_solver.hpp"
#include "covertlab/link_model.hpp"

namespace covert::sweep {

/// Thrown on a missing or invalid sweep field; the message names the first
/// offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownFigureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sweepable parameter names: sigma_b_db, sigma_w_db, sigma_e_db, pa_db
/// (dB-valued), upsilon, eps_c, eps_s, eps_t (linear).
bool is_known_parameter(const std::string& name);

enum class Spacing { Linear, Logarithmic };

struct AxisSpec {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

/// One curve of a sweep: parameter overrides applied on top of the fixed
/// map. `assumed` marks defaults a figure recipe could not pin exactly.
struct SeriesEntry {
  std::string label;
  std::vector<std::pair<std::string, double>> overrides;
  bool assumed = false;
};

struct McSettings {
  std::uint64_t n = 0;  // 0 disables per-row Monte Carlo columns
  std::uint64_t seed = 0;
};

struct SweepSpec {
  std::vector<ScenarioId> scenarios;
  std::map<std::string, double> fixed;
  AxisSpec axis;
  std::vector<SeriesEntry> series;  // empty: one implicit series
  McSettings validation;
  std::string recipe;               // recipe id when built from one
  std::vector<std::string> notes;   // provenance, echoed as CSV comments

  void validate() const;  // throws ConfigError
};

struct McColumn {
  double mean = 0.0;
  double half_width = 0.0;
  bool pass = false;
};

/// One solved sweep point. Parameter values appear both as configured (dB
/// where applicable) and linear.
struct ResultRow {
  ScenarioId scenario;
  std::string series_label;
  double sigma_b_db, sigma_b2;
  double sigma_w_db, sigma_w2;
  double sigma_e_db, sigma_e2;
  double upsilon;
  std::optional<double> pa_db, pa;
  double eps_c, eps_s, eps_t;
  double axis_value;
  solver::CsrSolution sol;
  bool has_mc = false;
  McColumn mc_tp, mc_sop, mc_cop;
};

/// Solves every (scenario x series x axis point) and returns rows in axis
/// order within each (scenario, series) group. Deterministic.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// Bundled sweep presets reproducing the reference experiment figures.
/// Entries the preset cannot pin exactly ship as assumed defaults and are
/// flagged in the spec notes.
SweepSpec figure_recipe(const std::string& id);
std::vector<std::string> figure_ids();

/// Flat `key = value` config text; `#` starts a comment.
SweepSpec parse_config(const std::string& text);
SweepSpec load_config(const std::string& path);

}  // namespace covert::sweep
