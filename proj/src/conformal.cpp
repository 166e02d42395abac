#include "hankel_spectra/conformal.hpp"

#include <cmath>
#include <numbers>

#include "hankel_spectra/errors.hpp"

namespace hankel::symbols {

CirclePoint moebius_image(const CirclePoint &a, double alpha) {
  const Complex mu = a.value();
  return CirclePoint::from_complex((mu + alpha) / (1.0 + alpha * mu));
}

SymbolSpec conformal_transform_symbol(const SymbolSpec &input, double alpha) {
  if (!(std::abs(alpha) < 1.0))
    throw AlphaOutOfRange("alpha = " + std::to_string(alpha));
  if (input.representation != Representation::Circle)
    throw ValidationError("conformal transform expects a circle symbol");
  const SymbolSpec spec = validate_symbol(input);

  SymbolSpec out;
  out.representation = Representation::Circle;
  out.beta0 = spec.beta0;
  for (const auto &j : spec.jumps) {
    const auto &a = std::get<CirclePoint>(j.location);
    // Keep +-1 exact; they are fixed points of the map.
    const CirclePoint moved = a.is_real() ? a : moebius_image(a, alpha);
    out.jumps.push_back({moved, a.value() / moved.value() * j.value});
  }
  out.body = ConformalBody{std::make_shared<const SymbolSpec>(spec), alpha};
  return validate_symbol(out);
}

double alpha_for_angle(double theta) {
  return std::tan(std::numbers::pi / 4.0 - theta / 2.0);
}

} // namespace hankel::symbols
