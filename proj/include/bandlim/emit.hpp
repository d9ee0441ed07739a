#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bandlim/mimicry.hpp"

namespace bandlim {

// Shortest round-trip decimal form (17 significant digits), locale-free.
std::string format_double(double x);

// RFC-4180 CSV with LF line endings; fields quoted only when needed.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct RegionGrid {
  ProcessKind family = ProcessKind::sine_continuous;
  double a_min = 0.0, a_max = 2.0;
  double b_min = 0.0, b_max = 3.0;
  double step = 0.01;
  std::vector<RegionPoint> points;  // row-major: a outer, B inner
};

RegionGrid region_grid(ProcessKind family, double a_max, double b_max, double step);

void write_region_csv(std::ostream& out, const RegionGrid& grid);

// Deterministic SVG: one cell per grid point (green mimicable, red not,
// white unknown) plus the exact boundary curves as polylines.
void write_region_svg(std::ostream& out, const RegionGrid& grid);

}  // namespace bandlim
