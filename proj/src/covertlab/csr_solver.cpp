#include "covertlab/csr_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "covertlab/analytic_metrics.hpp"
#include "covertlab/numerics.hpp"
#include "covertlab/parallel.hpp"

namespace covert::solver {

namespace {

constexpr double kEuler = 2.718281828459045;
constexpr double kTieTol = 1e-9;
constexpr double kSlack = 1e-12;  // constraint slack for grid screening

std::string_view names[] = {"stationary", "secrecy_bound", "transmission_bound",
                            "infeasible"};

struct Pick {
  double rs;
  Regime regime;
};

// Smallest candidate wins; ties inside kTieTol resolve in the order
// stationary > secrecy > transmission.
Pick pick_candidate(const RsCandidates& c) {
  const double m = std::min({c.r_stationary, c.r_sop, c.r_tp});
  if (c.r_stationary <= m + kTieTol) return {c.r_stationary, Regime::Stationary};
  if (c.r_sop <= m + kTieTol) return {c.r_sop, Regime::SecrecyBound};
  return {c.r_tp, Regime::TransmissionBound};
}

CsrSolution solve_pc(ScenarioId sc, const NoiseProfile& noise,
                     const SecurityConstraints& cons) {
  noise.validate();
  cons.validate();
  const bool friends = sc.relationship == Relationship::Friend;
  const double sb2 = noise.sigma_b2;

  double p_star, r_sop;
  if (friends) {
    const double w = num::lambert_wm1(-cons.eps_c / kEuler);
    p_star = -noise.upsilon / (1.0 + w);
    const double root = std::sqrt(1.0 - cons.eps_s);
    const double c = noise.sigma_w2 + noise.sigma_e2;
    r_sop = std::log2((1.0 - root) * c / (sb2 * root));
  } else {
    p_star = -noise.upsilon / std::log(cons.eps_c);
    r_sop = std::log2(noise.sigma_e2 * cons.eps_s / ((1.0 - cons.eps_s) * sb2));
  }
  const double r_tp = std::log2(1.0 - p_star * std::log1p(-cons.eps_t) / sb2);
  const double r0 = num::lambert_w0(p_star / sb2) / std::numbers::ln2;

  CsrSolution out;
  out.power_opt = p_star;
  if (std::min(r_sop, r_tp) <= 0.0) return out;  // no feasible rate

  const auto [rs, regime] = pick_candidate({r0, r_sop, r_tp});
  out.rs_opt = rs;
  out.regime = regime;
  out.tp = metrics::tp_pc(noise, p_star, rs);
  out.csr = rs * out.tp;
  out.cop = metrics::cop_at_optimal_theta(sc, noise, p_star, 1.0);
  out.sop = friends ? metrics::sop_fp(noise, rs) : metrics::sop_ip(noise, rs);
  return out;
}

CsrSolution solve_an(ScenarioId sc, const NoiseProfile& noise, double pa,
                     const SecurityConstraints& cons) {
  noise.validate();
  cons.validate();
  if (!(pa > 0.0) || !std::isfinite(pa))
    throw std::invalid_argument("solve: pa must be positive and finite");
  const bool friends = sc.relationship == Relationship::Friend;

  const auto worst_cop = [&](double rho) {
    return metrics::cop_at_optimal_theta(sc, noise, pa, rho);
  };
  if (friends) {
    // the attainable worst-case COP range must reach eps_c
    const auto mx = num::maximize_1d(worst_cop, 1e-9, 1.0 - 1e-9,
                                     num::ToleranceSpec{1e-9, 0.0, 512});
    if (cons.eps_c >= mx.max) return CsrSolution{};
  }
  const double rho = num::find_root(
      [&](double r) { return worst_cop(r) - cons.eps_c; }, 1e-12, 1.0 - 1e-12,
      num::kTightRootTol);

  CsrSolution out;
  out.power_opt = rho;

  const double ceiling = -std::log1p(-rho) / std::numbers::ln2;
  const double margin = std::min(1e-9, 1e-3 * ceiling);
  const double lo = margin, hi = ceiling - margin;

  const double lt = std::log1p(-cons.eps_t);  // ln(1 - eps_t)
  const double r_tp = std::log2((pa * lt - noise.sigma_b2) /
                                ((1.0 - rho) * pa * lt - noise.sigma_b2));

  const auto sop_at = [&](double rs) {
    return friends ? metrics::sop_fa(noise, pa, rho, rs)
                   : metrics::sop_ia(noise, pa, rho, rs);
  };
  double r_sop;
  if (sop_at(hi) < cons.eps_s) {
    r_sop = hi;  // never binds below the capacity ceiling
  } else if (sop_at(lo) > cons.eps_s) {
    return out;  // secrecy unattainable at any rate
  } else {
    r_sop = num::find_root([&](double rs) { return sop_at(rs) - cons.eps_s; },
                           lo, hi, num::ToleranceSpec{1e-10, 1e-12, 200});
  }

  // stationary point: sign change of the objective's rate derivative
  const auto obj = [&](double rs) {
    return rs * metrics::tp_an(noise, pa, rho, rs);
  };
  const auto dobj = [&](double rs) {
    const double h = std::min({1e-6 * std::max(1.0, rs), 0.5 * rs, 0.25 * (hi - lo)});
    return (obj(rs + h) - obj(rs - h)) / (2.0 * h);
  };
  double r0 = hi;
  {
    constexpr int kScan = 65;
    double prev_x = lo, prev_d = dobj(lo);
    bool found = false;
    for (int i = 1; i < kScan; ++i) {
      const double x = lo + (hi - lo) * i / (kScan - 1);
      const double d = dobj(x);
      if (prev_d > 0.0 && d <= 0.0) {
        r0 = num::find_root(dobj, prev_x, x, num::ToleranceSpec{1e-12, 0.0, 200});
        found = true;
        break;
      }
      prev_x = x;
      prev_d = d;
    }
    if (!found)
      r0 = prev_d > 0.0
               ? hi
               : num::maximize_1d(obj, lo, hi, num::ToleranceSpec{1e-10, 0.0, 257}).argmax;
  }

  const auto [rs, regime] = pick_candidate({r0, r_sop, r_tp});
  out.rs_opt = rs;
  out.regime = regime;
  out.tp = metrics::tp_an(noise, pa, rho, rs);
  out.csr = rs * out.tp;
  out.cop = worst_cop(rho);
  out.sop = sop_at(rs);
  return out;
}

}  // namespace

std::string_view regime_name(Regime r) { return names[static_cast<int>(r)]; }

std::optional<Regime> parse_regime(std::string_view text) {
  for (int i = 0; i < 4; ++i)
    if (text == names[i]) return static_cast<Regime>(i);
  return std::nullopt;
}

CsrSolution solve_ip(const NoiseProfile& noise, const SecurityConstraints& cons) {
  return solve_pc(ScenarioId::ip(), noise, cons);
}

CsrSolution solve_fp(const NoiseProfile& noise, const SecurityConstraints& cons) {
  return solve_pc(ScenarioId::fp(), noise, cons);
}

CsrSolution solve_ia(const NoiseProfile& noise, double pa,
                     const SecurityConstraints& cons) {
  return solve_an(ScenarioId::ia(), noise, pa, cons);
}

CsrSolution solve_fa(const NoiseProfile& noise, double pa,
                     const SecurityConstraints& cons) {
  return solve_an(ScenarioId::fa(), noise, pa, cons);
}

CsrSolution solve(ScenarioId sc, const NoiseProfile& noise,
                  std::optional<double> pa, const SecurityConstraints& cons) {
  if (sc.scheme == Scheme::PowerControl) return solve_pc(sc, noise, cons);
  if (!pa)
    throw std::invalid_argument(
        "solve: pa is required for the artificial-noise scenarios");
  return solve_an(sc, noise, *pa, cons);
}

namespace {

struct RefProblem {
  ScenarioId sc;
  NoiseProfile noise;
  double pa = 0.0;  // fixed total power (artificial-noise only)
  SecurityConstraints cons;
  bool an = false;
  num::ToleranceSpec sop_tol{1e-6, 1e-12, 4000};

  double cop_of(double x1) const {
    return metrics::cop_at_optimal_theta(sc, noise, an ? pa : x1, an ? x1 : 1.0);
  }
  double tp_of(double x1, double rs) const {
    return an ? metrics::tp_an(noise, pa, x1, rs)
              : metrics::tp_pc(noise, x1, rs);
  }
  double sop_of(double x1, double rs) const {
    if (!an)
      return sc.relationship == Relationship::Friend
                 ? metrics::sop_fp(noise, rs)
                 : metrics::sop_ip(noise, rs);
    return sc.relationship == Relationship::Friend
               ? metrics::sop_fa(noise, pa, x1, rs, sop_tol)
               : metrics::sop_ia(noise, pa, x1, rs, sop_tol);
  }

  // Largest rate worth scanning: beyond the transmit-probability bound every
  // cell is infeasible, and for artificial noise the capacity ceiling caps it.
  double rs_cap(double x1) const {
    const double lt = std::log1p(-cons.eps_t);
    if (!an) return std::log2(1.0 - x1 * lt / noise.sigma_b2);
    const double ceiling = -std::log1p(-x1) / std::numbers::ln2;
    const double r_tp = std::log2((pa * lt - noise.sigma_b2) /
                                  ((1.0 - x1) * pa * lt - noise.sigma_b2));
    return std::min(r_tp, ceiling * (1.0 - 1e-9));
  }

};

struct Cell {
  double value = -1.0;
  double x1 = 0.0;
  double rs = 0.0;
  bool found() const { return value >= 0.0; }
};

// Best feasible cell among the given rates of one column, visited in
// descending objective order; skips anything not strictly better than the
// incumbent, so updates can only improve the objective.
Cell best_in_column(const RefProblem& prob, double x1,
                    const std::vector<double>& rates, Cell incumbent) {
  const double cap = prob.rs_cap(x1);
  if (!(cap > 0.0)) return incumbent;
  struct Entry {
    double value, rs;
  };
  std::vector<Entry> entries;
  entries.reserve(rates.size());
  for (double rs : rates) {
    if (!(rs > 0.0) || rs > cap) continue;
    const double tp = prob.tp_of(x1, rs);
    if (tp < 1.0 - prob.cons.eps_t - kSlack) continue;
    const double value = rs * tp;
    if (value > incumbent.value) entries.push_back({value, rs});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.value != b.value ? a.value > b.value : a.rs < b.rs;
  });
  for (const Entry& e : entries) {
    if (e.value <= incumbent.value) break;
    if (prob.sop_of(x1, e.rs) <= prob.cons.eps_s + kSlack) {
      incumbent = Cell{e.value, x1, e.rs};
      break;
    }
  }
  return incumbent;
}

// Column optimum refined in rate alone: the ladder seeds a 1-D zoom, which
// tracks constraint boundaries regardless of how steeply they move across
// columns. The ladder is extended to the column's own cap (the cap itself
// included) so columns probed beyond the coarse grid keep full reach.
Cell column_optimum(const RefProblem& prob, double x1,
                    const std::vector<double>& rs_grid, int refine,
                    int passes) {
  if (prob.cop_of(x1) > prob.cons.eps_c + kSlack) return Cell{};
  const double cap = prob.rs_cap(x1);
  if (!(cap > 0.0)) return Cell{};
  double step = rs_grid.size() > 1 ? rs_grid[1] - rs_grid[0] : rs_grid[0];

  std::vector<double> seed = rs_grid;
  const double top = rs_grid.back();
  if (cap > top) {
    for (double r = top + step; r < cap && seed.size() < 8 * rs_grid.size();
         r += step)
      seed.push_back(r);
    seed.push_back(cap);
  }
  Cell cell = best_in_column(prob, x1, seed, Cell{});
  if (!cell.found()) return cell;

  std::vector<double> rates(static_cast<std::size_t>(refine));
  for (int p = 0; p < passes; ++p) {
    const double lo = std::max(cell.rs - step, 0.0);
    const double hi = std::min(cell.rs + step, cap);
    for (int j = 0; j < refine; ++j)
      rates[j] = lo + (hi - lo) * j / (refine - 1);
    cell = best_in_column(prob, x1, rates, cell);
    step = 2.0 * step / (refine - 1);
  }
  return cell;
}

Regime classify_reference(const RefProblem& prob, double tp, double sop) {
  if (std::abs(sop - prob.cons.eps_s) <= std::max(1e-6, 1e-3 * prob.cons.eps_s))
    return Regime::SecrecyBound;
  if (std::abs(tp - (1.0 - prob.cons.eps_t)) <= 1e-6)
    return Regime::TransmissionBound;
  return Regime::Stationary;
}

}  // namespace

CsrSolution solve_reference(ScenarioId sc, const NoiseProfile& noise,
                            std::optional<double> pa,
                            const SecurityConstraints& cons,
                            const GridSpec& grid, double* grid_stage_csr) {
  noise.validate();
  cons.validate();
  if (grid.coarse < 200)
    throw std::invalid_argument("solve_reference: need >= 200 grid points per axis");
  if (grid.refine < 5 || grid.passes < 0)
    throw std::invalid_argument("solve_reference: bad refinement spec");

  RefProblem prob;
  prob.sc = sc;
  prob.noise = noise;
  prob.cons = cons;
  prob.an = sc.scheme == Scheme::ArtificialNoise;
  if (prob.an) {
    if (!pa)
      throw std::invalid_argument(
          "solve_reference: pa is required for the artificial-noise scenarios");
    prob.pa = *pa;
  }

  // decision axis 1: rho over (0,1) for artificial noise, transmit power
  // over (0, power at the covertness bound] for power control
  double x1_lo, x1_hi;
  const int n = grid.coarse;
  std::vector<double> columns(n);
  if (prob.an) {
    x1_lo = 0.0;
    x1_hi = 1.0;
    for (int i = 0; i < n; ++i)
      columns[i] = static_cast<double>(i + 1) / (n + 1);
  } else {
    double hi = 1.0;
    while (prob.cop_of(hi) < cons.eps_c && hi < 1e12) hi *= 2.0;
    const double pa_max =
        num::find_root([&](double p) { return prob.cop_of(p) - cons.eps_c; },
                       1e-12, hi, num::ToleranceSpec{1e-12, 1e-14, 200});
    x1_lo = 0.0;
    x1_hi = pa_max;
    for (int i = 0; i < n; ++i) columns[i] = pa_max * (i + 1) / n;
  }

  // one rate ladder for every column: the largest cap over the feasible
  // columns; per-column caps trim it during the scan
  double rs_hi = 0.0;
  for (double x1 : columns)
    if (prob.cop_of(x1) <= cons.eps_c + kSlack)
      rs_hi = std::max(rs_hi, prob.rs_cap(x1));
  if (!(rs_hi > 0.0)) {
    if (grid_stage_csr) *grid_stage_csr = 0.0;
    return CsrSolution{};
  }
  std::vector<double> rs_grid(n);
  for (int j = 0; j < n; ++j) rs_grid[j] = rs_hi * (j + 1) / n;

  std::vector<Cell> col_best(n);
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    col_best[i] = column_optimum(prob, columns[i], rs_grid, grid.refine, 0);
  });
  Cell best;
  for (const Cell& c : col_best)
    if (c.found() && c.value > best.value) best = c;

  if (grid_stage_csr) *grid_stage_csr = best.found() ? best.value : 0.0;
  if (!best.found()) return CsrSolution{};  // empty feasible grid

  // zoom the decision axis; each probed column is itself refined in rate
  double dx1 = prob.an ? 1.0 / (n + 1) : (x1_hi - x1_lo) / n;
  for (int pass = 0; pass < grid.passes; ++pass) {
    const double margin = prob.an ? 1e-12 : x1_hi * 1e-12;
    const double a = std::max(x1_lo + margin, best.x1 - dx1);
    const double b = std::min(x1_hi - (prob.an ? margin : 0.0), best.x1 + dx1);
    std::vector<Cell> probe(static_cast<std::size_t>(grid.refine));
    detail::parallel_for(probe.size(), [&](std::size_t i) {
      const double x1 = a + (b - a) * static_cast<double>(i) / (grid.refine - 1);
      probe[i] = column_optimum(prob, x1, rs_grid, grid.refine, grid.passes);
    });
    for (const Cell& c : probe)
      if (c.found() && c.value > best.value) best = c;
    dx1 = 2.0 * dx1 / (grid.refine - 1);
  }

  CsrSolution out;
  out.power_opt = best.x1;
  out.rs_opt = best.rs;
  out.csr = best.value;
  out.tp = prob.tp_of(best.x1, best.rs);
  out.cop = prob.cop_of(best.x1);
  out.sop = prob.sop_of(best.x1, best.rs);
  out.regime = classify_reference(prob, out.tp, out.sop);
  return out;
}

}  // namespace covert::solver
