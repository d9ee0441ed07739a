#pragma once

#include <cstddef>
#include <vector>

namespace bandlim {

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// A finite point configuration with multiplicities. Positions are strictly
// increasing; multiplicities are parallel and >= 1. spacing > 0 marks a
// lattice-supported configuration (positions are lattice sites).
struct Configuration {
  Window window{};
  double spacing = 0.0;
  std::vector<double> positions;
  std::vector<int> multiplicities;

  std::size_t sites() const { return positions.size(); }
  long long total_count() const {
    long long n = 0;
    for (int m : multiplicities) n += m;
    return n;
  }
};

}  // namespace bandlim
