#include "covertlab/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "covertlab/monte_carlo.hpp"
#include "covertlab/parallel.hpp"

namespace covert::sweep {

namespace {

const std::set<std::string> kParams = {
    "sigma_b_db", "sigma_w_db", "sigma_e_db", "pa_db",
    "upsilon",    "eps_c",      "eps_s",      "eps_t"};

std::string fmt(double v, const char* f = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string series_label(const std::vector<std::pair<std::string, double>>& ov) {
  std::string out;
  for (const auto& [k, v] : ov) {
    if (!out.empty()) out += ' ';
    out += k + "=" + fmt(v, "%g");
  }
  return out;
}

double parse_number(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (...) {
    throw ConfigError("invalid number for '" + field + "': " + text);
  }
}

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

bool is_known_parameter(const std::string& name) { return kParams.count(name) > 0; }

std::vector<double> AxisSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    out[i] = spacing == Spacing::Linear
                 ? start + (stop - start) * t
                 : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t);
  }
  return out;
}

namespace {

// eps_* live strictly inside (0,1); upsilon must be positive
void check_param_range(const std::string& name, double value) {
  if (name.starts_with("eps_") && !(value > 0.0 && value < 1.0))
    throw ConfigError("parameter '" + name + "' must lie inside (0, 1)");
  if (name == "upsilon" && !(value > 0.0))
    throw ConfigError("parameter 'upsilon' must be positive");
}

}  // namespace

void SweepSpec::validate() const {
  if (scenarios.empty()) throw ConfigError("missing field 'scenario'");
  if (axis.param.empty()) throw ConfigError("missing field 'axis'");
  if (!is_known_parameter(axis.param))
    throw ConfigError("unknown axis parameter '" + axis.param + "'");
  if (axis.steps < 2) throw ConfigError("axis steps must be >= 2");
  if (!(axis.start < axis.stop)) throw ConfigError("axis start must be < stop");
  if (axis.spacing == Spacing::Logarithmic && !(axis.start > 0.0))
    throw ConfigError("logarithmic axis requires start > 0");
  if (fixed.count(axis.param))
    throw ConfigError("axis parameter '" + axis.param + "' also appears as fixed");
  check_param_range(axis.param, axis.start);
  check_param_range(axis.param, axis.stop);
  for (const auto& [k, v] : fixed) check_param_range(k, v);

  std::set<std::string> in_all_series;
  bool first = true;
  for (const auto& entry : series) {
    std::set<std::string> here;
    for (const auto& [k, v] : entry.overrides) {
      if (!is_known_parameter(k))
        throw ConfigError("unknown series parameter '" + k + "'");
      if (fixed.count(k))
        throw ConfigError("series parameter '" + k + "' also appears as fixed");
      if (k == axis.param)
        throw ConfigError("series parameter '" + k + "' is the axis parameter");
      check_param_range(k, v);
      here.insert(k);
    }
    if (first) {
      in_all_series = here;
      first = false;
    } else {
      std::set<std::string> keep;
      for (const auto& k : in_all_series)
        if (here.count(k)) keep.insert(k);
      in_all_series = keep;
    }
  }

  const auto provided = [&](const std::string& k) {
    return fixed.count(k) > 0 || axis.param == k || in_all_series.count(k) > 0;
  };
  const bool any_an = std::any_of(scenarios.begin(), scenarios.end(), [](ScenarioId s) {
    return s.scheme == Scheme::ArtificialNoise;
  });
  const char* required[] = {"sigma_b_db", "sigma_w_db", "sigma_e_db",
                            "upsilon",    "eps_c",      "eps_s",
                            "eps_t"};
  for (const char* k : required)
    if (!provided(k)) throw ConfigError(std::string("missing field '") + k + "'");
  if (any_an && !provided("pa_db"))
    throw ConfigError("missing field 'pa_db' (required for artificial-noise scenarios)");
}

namespace {

ResultRow solve_row(const SweepSpec& spec, ScenarioId sc,
                    const SeriesEntry& entry, double axis_value,
                    std::size_t row_index) {
  std::map<std::string, double> p = spec.fixed;
  for (const auto& [k, v] : entry.overrides) p[k] = v;
  p[spec.axis.param] = axis_value;

  ResultRow row;
  row.scenario = sc;
  row.series_label = entry.label.empty() ? series_label(entry.overrides) : entry.label;
  row.axis_value = axis_value;
  row.sigma_b_db = p.at("sigma_b_db");
  row.sigma_w_db = p.at("sigma_w_db");
  row.sigma_e_db = p.at("sigma_e_db");
  row.sigma_b2 = db_to_linear(row.sigma_b_db);
  row.sigma_w2 = db_to_linear(row.sigma_w_db);
  row.sigma_e2 = db_to_linear(row.sigma_e_db);
  row.upsilon = p.at("upsilon");
  row.eps_c = p.at("eps_c");
  row.eps_s = p.at("eps_s");
  row.eps_t = p.at("eps_t");
  if (p.count("pa_db")) {
    row.pa_db = p.at("pa_db");
    row.pa = db_to_linear(*row.pa_db);
  }

  const NoiseProfile noise{row.sigma_b2, row.sigma_w2, row.sigma_e2, row.upsilon};
  const SecurityConstraints cons{row.eps_c, row.eps_s, row.eps_t};
  row.sol = solver::solve(sc, noise, row.pa, cons);

  if (spec.validation.n > 0 && row.sol.feasible()) {
    TransmitConfig cfg;
    if (sc.scheme == Scheme::PowerControl) {
      cfg.pa = row.sol.power_opt;
      cfg.rho = 1.0;
    } else {
      cfg.pa = *row.pa;
      cfg.rho = row.sol.power_opt;
    }
    cfg.rs = row.sol.rs_opt;
    const auto report = mc::validate_scenario(
        sc, noise, cfg, spec.validation.n,
        derive_seed(spec.validation.seed, row_index));
    row.has_mc = true;
    row.mc_tp = {report.checks[0].estimate.mean,
                 report.checks[0].estimate.half_width, report.checks[0].pass};
    row.mc_sop = {report.checks[1].estimate.mean,
                  report.checks[1].estimate.half_width, report.checks[1].pass};
    row.mc_cop = {report.checks[2].estimate.mean,
                  report.checks[2].estimate.half_width, report.checks[2].pass};
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> axis_values = spec.axis.values();
  std::vector<SeriesEntry> series = spec.series;
  if (series.empty()) series.push_back(SeriesEntry{});

  struct Task {
    ScenarioId sc;
    const SeriesEntry* entry;
    double axis_value;
  };
  std::vector<Task> tasks;
  tasks.reserve(spec.scenarios.size() * series.size() * axis_values.size());
  for (ScenarioId sc : spec.scenarios)
    for (const SeriesEntry& entry : series)
      for (double v : axis_values) tasks.push_back({sc, &entry, v});

  std::vector<ResultRow> rows(tasks.size());
  detail::parallel_for(tasks.size(), [&](std::size_t i) {
    rows[i] = solve_row(spec, tasks[i].sc, *tasks[i].entry, tasks[i].axis_value, i);
  });
  return rows;
}

namespace {

struct RecipeBuilder {
  SweepSpec spec;

  RecipeBuilder(const std::string& id, std::vector<ScenarioId> scenarios) {
    spec.recipe = id;
    spec.scenarios = std::move(scenarios);
    spec.fixed = {{"sigma_b_db", -20.0}, {"sigma_w_db", 0.0},
                  {"sigma_e_db", 0.0},   {"upsilon", 0.01}};
  }

  RecipeBuilder& fix(const std::string& k, double v) {
    spec.fixed[k] = v;
    return *this;
  }

  RecipeBuilder& axis(const std::string& param, double a, double b, int n,
                      Spacing sp, bool assumed) {
    spec.axis = AxisSpec{param, a, b, n, sp};
    if (assumed)
      spec.notes.push_back("assumed: axis " + param + " = " + fmt(a, "%g") + ":" +
                           fmt(b, "%g") + ":" + std::to_string(n) + ":" +
                           (sp == Spacing::Linear ? "linear" : "logarithmic"));
    return *this;
  }

  RecipeBuilder& add_series(std::vector<std::pair<std::string, double>> ov,
                            bool assumed) {
    SeriesEntry e;
    e.overrides = std::move(ov);
    e.label = series_label(e.overrides);
    e.assumed = assumed;
    if (assumed) spec.notes.push_back("assumed: series " + e.label);
    spec.series.push_back(std::move(e));
    return *this;
  }

  SweepSpec done() {
    spec.validate();
    return spec;
  }
};

const std::vector<std::string> kFigureIds = {
    "fig2_ip",      "fig2_fp",      "fig3_ia",      "fig3_fa",
    "fig4_ip",      "fig4_fp",      "fig5_ia",      "fig5_fa",
    "fig6_ip",      "fig6_fp",      "fig7_ia",      "fig7_fa",
    "fig8_pc",      "fig8_an",      "fig9_ind",     "fig9_fri",
    "fig10_ind_es", "fig10_fri_es", "fig10_ind_et", "fig10_fri_et"};

SweepSpec build_recipe(const std::string& id) {
  const auto ip = ScenarioId::ip(), ia = ScenarioId::ia();
  const auto fp = ScenarioId::fp(), fa = ScenarioId::fa();

  // vs eps_c, one scenario per figure panel
  if (id == "fig2_ip" || id == "fig2_fp" || id == "fig3_ia" || id == "fig3_fa") {
    const bool an = id[3] == '3';
    RecipeBuilder b(id, {id.ends_with("ip")   ? ip
                         : id.ends_with("fp") ? fp
                         : id.ends_with("ia") ? ia
                                              : fa});
    if (an) b.fix("pa_db", -20.0);
    b.axis("eps_c", 0.01, 0.5, 50, Spacing::Linear, true);
    b.add_series({{"eps_s", 0.03}, {"eps_t", 0.5}}, an);
    b.add_series({{"eps_s", 0.02}, {"eps_t", 0.1}}, an);
    b.add_series({{"eps_s", 0.1}, {"eps_t", 0.3}}, true);
    return b.done();
  }
  // vs eps_s
  if (id == "fig4_ip" || id == "fig4_fp" || id == "fig5_ia" || id == "fig5_fa") {
    const bool an = id[3] == '5';
    RecipeBuilder b(id, {id.ends_with("ip")   ? ip
                         : id.ends_with("fp") ? fp
                         : id.ends_with("ia") ? ia
                                              : fa});
    b.fix("sigma_b_db", an ? -31.0 : -30.0);
    if (an) b.fix("pa_db", -20.0);
    b.axis("eps_s", 1e-4, 0.5, 60, Spacing::Logarithmic, true);
    b.add_series({{"eps_c", 0.01}, {"eps_t", 0.01}}, false);
    b.add_series({{"eps_c", 0.1}, {"eps_t", 0.1}}, true);
    b.add_series({{"eps_c", 0.5}, {"eps_t", 0.5}}, true);
    return b.done();
  }
  // vs eps_t
  if (id == "fig6_ip" || id == "fig6_fp" || id == "fig7_ia" || id == "fig7_fa") {
    const bool an = id[3] == '7';
    RecipeBuilder b(id, {id.ends_with("ip")   ? ip
                         : id.ends_with("fp") ? fp
                         : id.ends_with("ia") ? ia
                                              : fa});
    if (an) b.fix("pa_db", -20.0);
    b.axis("eps_t", 0.01, 0.99, 50, Spacing::Linear, true);
    b.add_series({{"eps_c", 0.5}, {"eps_s", 0.01}}, true);
    b.add_series({{"eps_c", 0.1}, {"eps_s", 0.1}}, true);
    b.add_series({{"eps_c", 0.01}, {"eps_s", 0.1}}, true);
    return b.done();
  }
  // relationship comparison
  if (id == "fig8_pc" || id == "fig8_an") {
    const bool an = id == "fig8_an";
    RecipeBuilder b(id, an ? std::vector<ScenarioId>{ia, fa}
                           : std::vector<ScenarioId>{ip, fp});
    b.fix("eps_s", 0.1).fix("eps_t", 0.1);
    b.axis("eps_c", 0.01, 0.5, 50, Spacing::Linear, true);
    if (an) {
      b.add_series({{"pa_db", -5.0}}, false);
      b.add_series({{"pa_db", -20.0}}, false);
    } else {
      b.spec.fixed.erase("upsilon");
      b.add_series({{"upsilon", 0.01}}, false);
      b.add_series({{"upsilon", 0.001}}, false);
    }
    return b.done();
  }
  // scheme comparison vs eps_c
  if (id == "fig9_ind" || id == "fig9_fri") {
    RecipeBuilder b(id, id == "fig9_ind" ? std::vector<ScenarioId>{ip, ia}
                                         : std::vector<ScenarioId>{fp, fa});
    b.fix("eps_s", 0.1).fix("eps_t", 0.1);
    b.axis("eps_c", 0.01, 0.5, 50, Spacing::Linear, true);
    b.add_series({{"pa_db", -15.0}}, false);
    b.add_series({{"pa_db", -20.0}}, false);
    return b.done();
  }
  // scheme comparison vs eps_s / eps_t
  if (id == "fig10_ind_es" || id == "fig10_fri_es" || id == "fig10_ind_et" ||
      id == "fig10_fri_et") {
    const bool vs_es = id.ends_with("_es");
    RecipeBuilder b(id, id.find("ind") != std::string::npos
                            ? std::vector<ScenarioId>{ip, ia}
                            : std::vector<ScenarioId>{fp, fa});
    if (vs_es) {
      b.fix("eps_c", 0.1).fix("eps_t", 0.1);
      b.axis("eps_s", 1e-4, 0.5, 60, Spacing::Logarithmic, true);
    } else {
      b.fix("eps_c", 0.1).fix("eps_s", 0.1);
      b.axis("eps_t", 0.01, 0.99, 50, Spacing::Linear, true);
    }
    b.add_series({{"pa_db", -15.0}}, false);
    b.add_series({{"pa_db", -20.0}}, false);
    return b.done();
  }
  throw UnknownFigureError("unknown figure id '" + id + "'");
}

}  // namespace

SweepSpec figure_recipe(const std::string& id) { return build_recipe(id); }

std::vector<std::string> figure_ids() { return kFigureIds; }

SweepSpec parse_config(const std::string& text) {
  SweepSpec spec;
  std::map<int, SeriesEntry> numbered_series;
  bool have_param_series = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value', got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("empty key or value in line: " + line);

    if (key == "scenario" || key == "scenarios") {
      for (const auto& tok : split(value, ',')) {
        const auto sc = ScenarioId::parse(tok);
        if (!sc) throw ConfigError("unknown scenario '" + tok + "'");
        spec.scenarios.push_back(*sc);
      }
    } else if (is_known_parameter(key)) {
      spec.fixed[key] = parse_number(value, key);
    } else if (key.starts_with("axis.")) {
      if (!spec.axis.param.empty()) throw ConfigError("duplicate axis");
      AxisSpec axis;
      axis.param = key.substr(5);
      const auto parts = split(value, ':');
      if (parts.size() != 3 && parts.size() != 4)
        throw ConfigError("axis value must be start:stop:steps[:spacing]");
      axis.start = parse_number(parts[0], key);
      axis.stop = parse_number(parts[1], key);
      axis.steps = static_cast<int>(parse_number(parts[2], key));
      if (parts.size() == 4) {
        if (parts[3] == "linear")
          axis.spacing = Spacing::Linear;
        else if (parts[3] == "logarithmic" || parts[3] == "log")
          axis.spacing = Spacing::Logarithmic;
        else
          throw ConfigError("unknown axis spacing '" + parts[3] + "'");
      }
      spec.axis = axis;
    } else if (key.starts_with("series.")) {
      const std::string tail = key.substr(7);
      if (!tail.empty() && std::isdigit(static_cast<unsigned char>(tail[0]))) {
        if (have_param_series)
          throw ConfigError("cannot mix series.<param> and series.<n> forms");
        SeriesEntry entry;
        for (const auto& tok : split(value, ' ')) {
          if (tok.empty()) continue;
          const auto e2 = tok.find('=');
          if (e2 == std::string::npos)
            throw ConfigError("series entries need k=v pairs: " + tok);
          entry.overrides.emplace_back(trim(tok.substr(0, e2)),
                                       parse_number(trim(tok.substr(e2 + 1)), key));
        }
        entry.label = series_label(entry.overrides);
        numbered_series[static_cast<int>(parse_number(tail, "series index"))] = entry;
      } else {
        if (!numbered_series.empty())
          throw ConfigError("cannot mix series.<param> and series.<n> forms");
        if (have_param_series) throw ConfigError("duplicate series");
        have_param_series = true;
        for (const auto& tok : split(value, ',')) {
          SeriesEntry entry;
          entry.overrides.emplace_back(tail, parse_number(tok, key));
          entry.label = series_label(entry.overrides);
          spec.series.push_back(std::move(entry));
        }
      }
    } else if (key == "validate.n") {
      spec.validation.n = static_cast<std::uint64_t>(parse_number(value, key));
    } else if (key == "validate.seed") {
      spec.validation.seed = static_cast<std::uint64_t>(parse_number(value, key));
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  for (auto& [idx, entry] : numbered_series) spec.series.push_back(entry);
  spec.validate();
  return spec;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace covert::sweep
