#include "covertlab/emit.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace covert::sweep {

namespace {

std::string fmt(double v, const char* f = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

template <class Emit>
void to_path(const std::string& path, const Emit& emit) {
  if (path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  emit(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path);
}

struct GroupKey {
  std::string scenario;
  std::string series;
  bool operator==(const GroupKey&) const = default;
};

// rows grouped by (scenario, series) preserving first-appearance order
std::vector<std::pair<GroupKey, std::vector<const ResultRow*>>> group_rows(
    const std::vector<ResultRow>& rows) {
  std::vector<std::pair<GroupKey, std::vector<const ResultRow*>>> groups;
  for (const ResultRow& r : rows) {
    const GroupKey key{std::string(r.scenario.abbrev()), r.series_label};
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back(&r);
  }
  return groups;
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              std::ostream& os) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");

  os << "# covertlab sweep\n";
  if (!spec.recipe.empty()) os << "# recipe: " << spec.recipe << "\n";
  for (const auto& note : spec.notes) os << "# " << note << "\n";
  os << "# axis: " << spec.axis.param << " " << fmt(spec.axis.start, "%g") << ":"
     << fmt(spec.axis.stop, "%g") << ":" << spec.axis.steps << ":"
     << (spec.axis.spacing == Spacing::Linear ? "linear" : "logarithmic") << "\n";
  const bool mc = spec.validation.n > 0;
  if (mc)
    os << "# validation: n=" << spec.validation.n
       << " seed=" << spec.validation.seed << "\n";

  os << "scenario,series,sigma_b_db,sigma_b2,sigma_w_db,sigma_w2,"
        "sigma_e_db,sigma_e2,upsilon,pa_db,pa,eps_c,eps_s,eps_t,"
        "csr,rs_opt,power_opt,regime,tp,cop,sop";
  if (mc)
    os << ",mc_tp,mc_tp_hw,mc_tp_pass,mc_sop,mc_sop_hw,mc_sop_pass,"
          "mc_cop,mc_cop_hw,mc_cop_pass";
  os << "\n";

  for (const ResultRow& r : rows) {
    // solved rows must respect their own declared bounds
    if (r.sol.regime != solver::Regime::Infeasible) {
      if (!(r.sol.cop <= r.eps_c + 1e-9) || !(r.sol.sop <= r.eps_s + 1e-9) ||
          !(r.sol.tp >= 1.0 - r.eps_t - 1e-9))
        throw std::logic_error("emit_csv: row violates its constraint bounds");
    }
    os << r.scenario.abbrev() << "," << r.series_label << ","
       << fmt(r.sigma_b_db) << "," << fmt(r.sigma_b2) << ","
       << fmt(r.sigma_w_db) << "," << fmt(r.sigma_w2) << ","
       << fmt(r.sigma_e_db) << "," << fmt(r.sigma_e2) << ","
       << fmt(r.upsilon) << ","
       << (r.pa_db ? fmt(*r.pa_db) : "") << "," << (r.pa ? fmt(*r.pa) : "")
       << "," << fmt(r.eps_c) << "," << fmt(r.eps_s) << "," << fmt(r.eps_t)
       << "," << fmt(r.sol.csr) << "," << fmt(r.sol.rs_opt) << ","
       << fmt(r.sol.power_opt) << "," << solver::regime_name(r.sol.regime)
       << "," << fmt(r.sol.tp) << "," << fmt(r.sol.cop) << ","
       << fmt(r.sol.sop);
    if (mc) {
      if (r.has_mc) {
        os << "," << fmt(r.mc_tp.mean) << "," << fmt(r.mc_tp.half_width) << ","
           << (r.mc_tp.pass ? 1 : 0) << "," << fmt(r.mc_sop.mean) << ","
           << fmt(r.mc_sop.half_width) << "," << (r.mc_sop.pass ? 1 : 0) << ","
           << fmt(r.mc_cop.mean) << "," << fmt(r.mc_cop.half_width) << ","
           << (r.mc_cop.pass ? 1 : 0);
      } else {
        os << ",,,,,,,,,";
      }
    }
    os << "\n";
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              const std::string& path) {
  to_path(path, [&](std::ostream& os) { emit_csv(rows, spec, os); });
}

namespace {

constexpr double kWidth = 960.0, kHeight = 640.0;
constexpr double kLeft = 80.0, kRight = 30.0, kTop = 30.0, kBottom = 60.0;

const char* kStrokes[6] = {"#1f77b4", "#d62728", "#2ca02c",
                           "#9467bd", "#ff7f0e", "#17becf"};
const char* kDashes[2] = {"", "8 5"};

}  // namespace

void emit_svg(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              std::ostream& os) {
  if (rows.empty()) throw std::invalid_argument("emit_svg: no rows");
  const auto groups = group_rows(rows);

  double xmin = rows.front().axis_value, xmax = xmin;
  double ymin = 0.0, ymax = 0.0;
  for (const ResultRow& r : rows) {
    xmin = std::min(xmin, r.axis_value);
    xmax = std::max(xmax, r.axis_value);
    ymax = std::max(ymax, r.sol.csr);
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  ymax *= 1.05;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) {
    return kLeft + pw * (x - xmin) / (xmax - xmin);
  };
  const auto py = [&](double y) {
    return kTop + ph * (1.0 - (y - ymin) / (ymax - ymin));
  };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 640\" "
        "font-family=\"monospace\" font-size=\"13\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"960\" height=\"640\" fill=\"white\"/>\n"
     << "<rect x=\"" << fmt(kLeft, "%.2f") << "\" y=\"" << fmt(kTop, "%.2f")
     << "\" width=\"" << fmt(pw, "%.2f") << "\" height=\"" << fmt(ph, "%.2f")
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // 6 ticks per axis
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    const double xp = px(xv), yp = py(yv);
    os << "<line x1=\"" << fmt(xp, "%.2f") << "\" y1=\"" << fmt(kTop + ph, "%.2f")
       << "\" x2=\"" << fmt(xp, "%.2f") << "\" y2=\"" << fmt(kTop + ph + 6, "%.2f")
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fmt(xp, "%.2f") << "\" y=\"" << fmt(kTop + ph + 22, "%.2f")
       << "\" text-anchor=\"middle\">" << fmt(xv, "%.4g") << "</text>\n"
       << "<line x1=\"" << fmt(kLeft - 6, "%.2f") << "\" y1=\"" << fmt(yp, "%.2f")
       << "\" x2=\"" << fmt(kLeft, "%.2f") << "\" y2=\"" << fmt(yp, "%.2f")
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fmt(kLeft - 10, "%.2f") << "\" y=\"" << fmt(yp + 4, "%.2f")
       << "\" text-anchor=\"end\">" << fmt(yv, "%.4g") << "</text>\n";
  }
  os << "<text x=\"" << fmt(kLeft + pw / 2, "%.2f") << "\" y=\""
     << fmt(kHeight - 14, "%.2f") << "\" text-anchor=\"middle\">"
     << xml_escape(spec.axis.param) << "</text>\n"
     << "<text x=\"20\" y=\"" << fmt(kTop + ph / 2, "%.2f")
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << fmt(kTop + ph / 2, "%.2f") << ")\">CSR</text>\n";

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const char* stroke = kStrokes[g % 6];
    const char* dash = kDashes[(g / 6) % 2];
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.6\"";
    if (dash[0] != '\0') os << " stroke-dasharray=\"" << dash << "\"";
    os << " points=\"";
    bool first = true;
    for (const ResultRow* r : groups[g].second) {
      if (!first) os << " ";
      first = false;
      os << fmt(px(r->axis_value), "%.2f") << "," << fmt(py(r->sol.csr), "%.2f");
    }
    os << "\"/>\n";
  }

  // legend, top-right inside the plot frame
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double ly = kTop + 18.0 + 18.0 * g;
    const double lx = kLeft + pw - 250.0;
    const char* stroke = kStrokes[g % 6];
    const char* dash = kDashes[(g / 6) % 2];
    std::string label = groups[g].first.scenario;
    if (!groups[g].first.series.empty()) label += " " + groups[g].first.series;
    os << "<line x1=\"" << fmt(lx, "%.2f") << "\" y1=\"" << fmt(ly - 4, "%.2f")
       << "\" x2=\"" << fmt(lx + 28, "%.2f") << "\" y2=\"" << fmt(ly - 4, "%.2f")
       << "\" stroke=\"" << stroke << "\" stroke-width=\"1.6\"";
    if (dash[0] != '\0') os << " stroke-dasharray=\"" << dash << "\"";
    os << "/>\n<text x=\"" << fmt(lx + 34, "%.2f") << "\" y=\"" << fmt(ly, "%.2f")
       << "\" class=\"legend\">" << xml_escape(label) << "</text>\n";
  }
  os << "</svg>\n";
}

void emit_svg(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              const std::string& path) {
  to_path(path, [&](std::ostream& os) { emit_svg(rows, spec, os); });
}

}  // namespace covert::sweep
