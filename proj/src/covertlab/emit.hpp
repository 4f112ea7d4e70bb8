#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "covertlab/sweep.hpp"

namespace covert::sweep {

/// Comma-separated output: provenance comments, a mandatory header row,
/// then one data row per sweep point at 12 significant digits.
/// Byte-identical for identical inputs.
void emit_csv(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              std::ostream& os);
void emit_csv(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              const std::string& path);

/// Self-contained SVG 1.1 line plot (viewBox 0 0 960 640): one polyline per
/// (scenario x series) group, linear axes with 6 ticks, legend per group.
void emit_svg(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              std::ostream& os);
void emit_svg(const std::vector<ResultRow>& rows, const SweepSpec& spec,
              const std::string& path);

}  // namespace covert::sweep
