#pragma once

#include <complex>

namespace hankel::special {

struct SineCosineIntegrals {
  double si = 0.0;
  double ci = 0.0;
};

/// Si(x) and Ci(x) for x > 0. Power series below x = 2, continued fraction
/// for E1(ix) above.
SineCosineIntegrals sine_cosine_integrals(double x);

/// Auxiliary functions f(x) = int_0^inf sin t/(t+x) dt and
/// g(x) = int_0^inf cos t/(t+x) dt for x > 0, evaluated without the
/// cancellation that the Si/Ci combinations suffer for large x.
struct AuxiliaryFG {
  double f = 0.0;
  double g = 0.0;
};
AuxiliaryFG auxiliary_fg(double x);

/// log Gamma(z) for complex z with Re z > 0 (reflection used otherwise).
std::complex<double> log_gamma(std::complex<double> z);

} // namespace hankel::special
