#include "bandlim/errors.hpp"

namespace bandlim {

const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_intensity: return "InvalidIntensity";
    case errc::invalid_spacing: return "InvalidSpacing";
    case errc::spacing_out_of_range: return "SpacingOutOfRange";
    case errc::off_lattice: return "OffLattice";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invalid_epsilon: return "InvalidEpsilon";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::bandwidth_exceeded: return "BandwidthExceeded";
    case errc::not_odd_multiple: return "NotOddMultiple";
    case errc::truncation_failure: return "TruncationFailure";
    case errc::slow_convergence: return "SlowConvergence";
    case errc::not_a_kernel: return "NotAKernel";
    case errc::resolution_too_coarse: return "ResolutionTooCoarse";
    case errc::window_too_large: return "WindowTooLarge";
    case errc::below_nyquist: return "BelowNyquist";
    case errc::invalid_parameters: return "InvalidParameters";
    case errc::domain_violation: return "DomainViolation";
    case errc::unsupported_order: return "UnsupportedOrder";
    case errc::invalid_r: return "InvalidR";
    case errc::order_too_large: return "OrderTooLarge";
    case errc::io_failure: return "IoFailure";
  }
  return "UnknownError";
}

}  // namespace bandlim
