#include "hankel_spectra/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hankel_spectra/errors.hpp"

namespace hankel::special {

namespace {

constexpr double kEuler = 0.577215664901532860606512090082;
constexpr double kSeriesSwitch = 2.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

SineCosineIntegrals series(double x) {
  // Si = sum_m (-1)^m x^(2m+1) / ((2m+1)(2m+1)!)
  // Ci = gamma + ln x + sum_{m>=1} (-1)^m x^(2m) / (2m (2m)!)
  double si = 0.0, ci = 0.0;
  double power = 1.0; // x^k / k!
  for (int k = 1; k < 200; ++k) {
    power *= x / k;
    const int m = k / 2;
    const double term = ((m % 2 == 0) ? 1.0 : -1.0) * power / k;
    if (k % 2 == 1)
      si += term;
    else
      ci += term;
    if (power / k < 0.1 * kEps * std::abs(si))
      break;
  }
  return {si, kEuler + std::log(x) + ci};
}

// e^{ix} E1(ix) by the modified Lentz continued fraction; equals g - i f.
std::complex<double> scaled_e1_imag(double x) {
  using C = std::complex<double>;
  constexpr double tiny = 1e-300;
  C b(1.0, x);
  C c(1.0 / tiny, 0.0);
  C d = 1.0 / b;
  C h = d;
  for (int i = 1; i < 10000; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps)
      return h;
  }
  throw NonConvergence("continued fraction for E1(ix) at x = " +
                       std::to_string(x));
}

} // namespace

SineCosineIntegrals sine_cosine_integrals(double x) {
  if (!(x > 0.0))
    throw std::domain_error("sine_cosine_integrals: x must be positive");
  if (x < kSeriesSwitch)
    return series(x);
  const auto h = scaled_e1_imag(x);
  const double f = -h.imag();
  const double g = h.real();
  const double s = std::sin(x), c = std::cos(x);
  return {std::numbers::pi / 2.0 - f * c - g * s, f * s - g * c};
}

AuxiliaryFG auxiliary_fg(double x) {
  if (!(x > 0.0))
    throw std::domain_error("auxiliary_fg: x must be positive");
  if (x >= kSeriesSwitch) {
    const auto h = scaled_e1_imag(x);
    return {-h.imag(), h.real()};
  }
  const auto sc = series(x);
  const double s = std::sin(x), c = std::cos(x);
  const double tail_si = std::numbers::pi / 2.0 - sc.si;
  return {c * tail_si + s * sc.ci, s * tail_si - c * sc.ci};
}

std::complex<double> log_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(std::numbers::pi) -
           std::log(std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
  }
  // Lanczos, g = 7, n = 9.
  static constexpr std::array<double, 9> coef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  C x = coef[0];
  for (std::size_t i = 1; i < coef.size(); ++i)
    x += coef[i] / (z + static_cast<double>(i));
  const C t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) -
         t + std::log(x);
}

} // namespace hankel::special
