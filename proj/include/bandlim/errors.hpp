#pragma once

#include <stdexcept>
#include <string>

namespace bandlim {

enum class errc {
  invalid_intensity,
  invalid_spacing,
  spacing_out_of_range,
  off_lattice,
  dimension_mismatch,
  invalid_epsilon,
  quadrature_failure,
  bandwidth_exceeded,
  not_odd_multiple,
  truncation_failure,
  slow_convergence,
  not_a_kernel,
  resolution_too_coarse,
  window_too_large,
  below_nyquist,
  invalid_parameters,
  domain_violation,
  unsupported_order,
  invalid_r,
  order_too_large,
  io_failure,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bandlim
