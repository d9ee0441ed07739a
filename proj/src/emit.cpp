#include "bandlim/emit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "bandlim/errors.hpp"

namespace bandlim {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) fail(errc::io_failure, "number formatting failed");
  return std::string(buf, res.ptr);
}

namespace {

bool needs_quotes(const std::string& field) {
  for (char c : field)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
  return false;
}

void write_field(std::ostream& out, const std::string& field) {
  if (!needs_quotes(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    write_field(out, row[i]);
  }
  out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  write_row(out, header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      fail(errc::io_failure, "csv row width does not match the header");
    write_row(out, row);
  }
  if (!out) fail(errc::io_failure, "csv stream write failed");
}

RegionGrid region_grid(ProcessKind family, double a_max, double b_max, double step) {
  if (!(step > 0.0)) fail(errc::invalid_parameters, "step must be positive");
  if (!(a_max >= step) || !(b_max >= 0.0))
    fail(errc::invalid_parameters, "grid bounds must cover at least one cell");
  RegionGrid grid;
  grid.family = family;
  grid.a_min = step;
  grid.a_max = a_max;
  grid.b_min = 0.0;
  grid.b_max = b_max;
  grid.step = step;
  const int na = static_cast<int>(std::floor(a_max / step + 1e-9));
  const int nb = static_cast<int>(std::floor(b_max / step + 1e-9));
  grid.points.reserve(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb + 1));
  for (int ia = 1; ia <= na; ++ia)
    for (int ib = 0; ib <= nb; ++ib)
      grid.points.push_back(classify_region(family, ia * step, ib * step));
  return grid;
}

void write_region_csv(std::ostream& out, const RegionGrid& grid) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(grid.points.size());
  for (const auto& p : grid.points)
    rows.push_back({format_double(p.a), format_double(p.bandwidth),
                    std::string(verdict_name(p.verdict)), p.rule});
  write_csv(out, {"a", "bandwidth", "verdict", "rule"}, rows);
}

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_region_svg(std::ostream& out, const RegionGrid& grid) {
  const double step = grid.step;
  const int na = static_cast<int>(std::floor(grid.a_max / step + 1e-9));
  const int nb = static_cast<int>(std::floor(grid.b_max / step + 1e-9));
  const double cell = 6.0;
  const double width = na * cell;
  const double height = (nb + 1) * cell;
  const auto x_of = [&](double a) { return (a / step - 0.5) * cell; };
  const auto y_of = [&](double b) { return (static_cast<double>(nb) - b / step + 0.5) * cell; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\""
      << px(height) << "\" viewBox=\"0 0 " << px(width) << ' ' << px(height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << px(width) << "\" height=\"" << px(height)
      << "\" fill=\"#ffffff\"/>\n";
  for (const auto& p : grid.points) {
    if (p.verdict == Verdict::unknown) continue;  // white background shows through
    const char* fill = p.verdict == Verdict::mimicable ? "#2e7d32" : "#c62828";
    out << "<rect x=\"" << px(x_of(p.a) - 0.5 * cell) << "\" y=\"" << px(y_of(p.bandwidth) - 0.5 * cell)
        << "\" width=\"" << px(cell) << "\" height=\"" << px(cell) << "\" fill=\"" << fill
        << "\"/>\n";
  }

  const bool poisson =
      grid.family == ProcessKind::poisson_continuous || grid.family == ProcessKind::poisson_lattice;
  auto polyline = [&](const std::function<double(double)>& curve, double a_lo, double a_hi) {
    std::string pts;
    for (int ia = 1; ia <= na; ++ia) {
      const double a = ia * step;
      if (a < a_lo - 1e-12 || a > a_hi + 1e-12) continue;
      const double b = curve(a);
      if (b < 0.0 || b > grid.b_max + step) continue;
      if (!pts.empty()) pts += ' ';
      pts += px(x_of(a)) + "," + px(y_of(b));
    }
    if (!pts.empty())
      out << "<polyline points=\"" << pts
          << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  };
  if (poisson) {
    polyline([](double a) { return 1.0 / a; }, step, grid.a_max);
  } else {
    polyline([](double a) { return (1.0 - a) / a; }, step, 1.0);
    polyline([](double a) { return 0.5 / a; }, 0.5, grid.a_max);
  }
  out << "</svg>\n";
  if (!out) fail(errc::io_failure, "svg stream write failed");
}

}  // namespace bandlim
