#pragma once

#include "hankel_spectra/symbols.hpp"

namespace hankel::symbols {

/// Moebius image of a circle point under mu -> (mu + alpha)/(1 + alpha mu),
/// the inverse of the substitution m(mu) = (mu - alpha)/(1 - alpha mu).
CirclePoint moebius_image(const CirclePoint &a, double alpha);

/// omega^{(alpha)}(mu) = mu^{-1} m(mu) omega(m(mu)). A jump kappa at a moves
/// to a' = moebius_image(a) with value (a/a') kappa, so the conjugate-partner
/// structure survives. Throws AlphaOutOfRange unless |alpha| < 1.
SymbolSpec conformal_transform_symbol(const SymbolSpec &spec, double alpha);

/// alpha = tan(pi/4 - theta/2): carries the pair (i, -i) to (e^{i theta}, e^{-i theta}).
double alpha_for_angle(double theta);

} // namespace hankel::symbols
