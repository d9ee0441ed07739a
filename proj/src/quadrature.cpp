#include "bandlim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "bandlim/errors.hpp"

namespace bandlim {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (positive half).
constexpr double kXgk[8] = {
    0.9914553711208126392069, 0.9491079123427585245262, 0.8648644233597690727897,
    0.7415311855993944398639, 0.5860872354676911302941, 0.4058451513773971669066,
    0.2077849550078984676007, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637, 0.0630920926299785532907, 0.1047900103222501838399,
    0.1406532597155259187452, 0.1690047266392679028266, 0.1903505780647854099133,
    0.2044329400752988924142, 0.2094821410847278280130};
constexpr double kWg[4] = {
    0.1294849661688696932706, 0.2797053914892766679015, 0.3818300505051189449504,
    0.4179591836734693877551};

template <typename T>
struct Gk15Result {
  T kronrod{};
  double error = 0.0;
};

template <typename T, typename F>
Gk15Result<T> gk15(const F& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  T resk{};
  T resg{};
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kXgk[i];
    T v = (i == 7) ? f(c) : T(f(c - dx) + f(c + dx));
    resk += kWgk[i] * v;
    if (i % 2 == 1) resg += kWg[i / 2] * v;
  }
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

template <typename T, typename F>
T adaptive(const F& f, double lo, double hi, const QuadOptions& opt) {
  if (!(lo < hi)) {
    if (lo == hi) return T{};
    std::swap(lo, hi);
    return -adaptive<T>(f, lo, hi, opt);
  }
  struct Piece {
    double lo, hi, error;
    T value;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  std::priority_queue<Piece> queue;
  auto first = gk15<T>(f, lo, hi);
  queue.push({lo, hi, first.error, first.kronrod});
  T total = first.kronrod;
  double total_err = first.error;
  int used = 1;
  while (total_err > opt.abs_tol) {
    if (used >= opt.max_intervals)
      fail(errc::quadrature_failure, "interval budget exhausted before tolerance");
    Piece worst = queue.top();
    queue.pop();
    // every piece is already below a 1e-6 share of the tolerance, so the
    // accumulated estimate cannot improve; the residual is rounding noise
    if (worst.error < opt.abs_tol * 1e-6 + 1e-300) break;
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // interval at floating-point resolution; accept its estimate
      queue.push({worst.lo, worst.hi, 0.0, worst.value});
      total_err -= worst.error;
      continue;
    }
    auto left = gk15<T>(f, worst.lo, mid);
    auto right = gk15<T>(f, mid, worst.hi);
    total += left.kronrod + right.kronrod - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.lo, mid, left.error, left.kronrod});
    queue.push({mid, worst.hi, right.error, right.kronrod});
    ++used;
  }
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, QuadOptions opt) {
  return adaptive<double>(f, lo, hi, opt);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double lo, double hi, QuadOptions opt) {
  return adaptive<std::complex<double>>(f, lo, hi, opt);
}

namespace {

template <typename T, typename F>
T box_recurse(const F& f, std::span<const std::array<double, 2>> box, double abs_tol,
              std::vector<double>& point, std::size_t axis) {
  const double lo = box[axis][0];
  const double hi = box[axis][1];
  QuadOptions opt;
  opt.abs_tol = abs_tol;
  if (axis + 1 == box.size()) {
    auto g = [&](double x) -> T {
      point[axis] = x;
      return f(std::span<const double>(point));
    };
    return adaptive<T>(g, lo, hi, opt);
  }
  // distribute tolerance across the outer width
  const double inner_tol = abs_tol / std::max(1.0, 2.0 * (hi - lo));
  auto g = [&](double x) -> T {
    point[axis] = x;
    return box_recurse<T>(f, box, inner_tol, point, axis + 1);
  };
  return adaptive<T>(g, lo, hi, opt);
}

}  // namespace

double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const std::array<double, 2>> box, double abs_tol) {
  if (box.empty() || box.size() > 3)
    fail(errc::invalid_parameters, "integrate_box supports dimensions 1..3");
  std::vector<double> point(box.size(), 0.0);
  return box_recurse<double>(f, box, abs_tol, point, 0);
}

std::complex<double> integrate_box_complex(
    const std::function<std::complex<double>(std::span<const double>)>& f,
    std::span<const std::array<double, 2>> box, double abs_tol) {
  if (box.empty() || box.size() > 3)
    fail(errc::invalid_parameters, "integrate_box supports dimensions 1..3");
  std::vector<double> point(box.size(), 0.0);
  return box_recurse<std::complex<double>>(f, box, abs_tol, point, 0);
}

namespace {

// Wynn's epsilon algorithm; returns the highest-order even-column entry.
double epsilon_extrapolate(const std::vector<double>& s) {
  const std::size_t n = s.size();
  std::vector<double> cur = s;
  std::vector<double> prev(n + 1, 0.0);  // epsilon_{-1} column is all zeros
  double best = cur.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (std::abs(diff) < 1e-300) {
        // column collapsed; the sequence effectively converged
        return cur[i + 1];
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev = cur;
    cur = next;
    if (k % 2 == 0 && !cur.empty()) best = cur.back();
  }
  return best;
}

}  // namespace

double oscillatory_line_integral(const std::function<double(double)>& f, double center,
                                 double panel, double abs_tol, int max_panels) {
  if (!(panel > 0.0)) fail(errc::invalid_parameters, "panel width must be positive");
  QuadOptions piece_opt;
  piece_opt.abs_tol = abs_tol * 1e-3;
  piece_opt.max_intervals = 200;

  std::vector<double> partial;
  double sum = 0.0;
  double prev_est = 0.0;
  int stable = 0;
  // grow symmetric spans [center - m*panel, center + m*panel]
  for (int m = 1; m <= max_panels; ++m) {
    const double lo = center - m * panel;
    const double hi = center + m * panel;
    sum += adaptive<double>(f, lo, lo + panel, piece_opt);
    sum += adaptive<double>(f, hi - panel, hi, piece_opt);
    partial.push_back(sum);
    if (partial.size() < 6) continue;
    const std::size_t keep = std::min<std::size_t>(partial.size(), 24);
    std::vector<double> tail(partial.end() - keep, partial.end());
    const double est = epsilon_extrapolate(tail);
    if (m > 12 && std::abs(est - prev_est) < 0.5 * abs_tol)
      ++stable;
    else
      stable = 0;
    prev_est = est;
    if (stable >= 3) return est;
  }
  fail(errc::slow_convergence, "oscillatory tail did not stabilize within the panel budget");
}

}  // namespace bandlim
