#pragma once

// ==== SPECIAL FUNCTIONS ====
// Principal-branch complex dilogarithm and a guarded two-argument arctangent.
// The dilogarithm is the analytic continuation of Li2(z) = sum z^k / k^2 with
// the branch cut on the real axis for z > 1, matching the principal branch of
// the logarithm used everywhere else in the library.

#include <complex>

#include <cutvol/types.hpp>

namespace cutvol {

// Principal-branch dilogarithm.  Accurate to ~1e-15 relative over the whole
// plane; the only caveat is the usual cancellation directly on the cut.
std::complex<double> dilog(std::complex<double> z);

// Real dilogarithm for x <= 1 (real part of the complex value for x > 1).
double dilog_real(double x);

// atan2 that refuses the undefined origin instead of returning the
// platform-defined value there.  Throws BothZero when y == x == 0.
double atan2_stable(double y, double x);

}  // namespace cutvol
