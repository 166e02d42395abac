#include "hankel_spectra/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/quadrature.hpp"
#include "hankel_spectra/special_functions.hpp"

namespace hankel::models {

namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void throw_at_jump(const char *what, double where) {
  throw EvaluationAtJump(std::string(what) + " at " + std::to_string(where));
}

} // namespace

double zeta(double nu) {
  if (nu == 0.0)
    return 0.0;
  if (std::isinf(nu))
    return 0.0;
  const double x = 2.0 * std::abs(nu);
  const double value = special::auxiliary_fg(x).f / pi;
  return nu > 0.0 ? value : -value;
}

double zeta_limit(int side) { return side >= 0 ? 0.5 : -0.5; }

double zeta_laplace(double nu) {
  if (nu == 0.0 || std::isinf(nu))
    return 0.0;
  const double a = 2.0 * std::abs(nu);
  // e^{-a x} is below 1e-17 beyond x = 40/a; the 1/(1+x^2) factor needs
  // geometric breakpoints when a is small.
  const double end = std::max(1.0, 40.0 / a);
  std::vector<double> breaks{0.0};
  for (double x = 1.0; x < end; x *= 8.0)
    breaks.push_back(x);
  breaks.push_back(end);
  quad::Options opt;
  opt.abs_tol = 1e-14;
  const auto r = quad::integrate_pieces(
      [a](double x) { return std::exp(-a * x) / (1.0 + x * x); }, breaks, opt);
  const double value = r.value / pi;
  return nu > 0.0 ? value : -value;
}

Complex psi0_quadrature(double nu) {
  if (nu == 0.0)
    return 0.0;
  auto integrand = [nu](double t) {
    const double x = t * nu;
    // sin(x)/t without cancellation for small x
    const double s = std::abs(x) < 1e-4 ? nu * (1.0 - x * x / 6.0) : std::sin(x) / t;
    return s * std::exp(-t);
  };
  // Split at the half periods of sin(t nu) on [0, 40]; e^{-40} ends it.
  std::vector<double> breaks{0.0};
  const double half_period = pi / std::abs(nu);
  for (double t = half_period; t < 40.0; t += half_period)
    breaks.push_back(t);
  breaks.push_back(40.0);
  quad::Options opt;
  opt.abs_tol = 1e-12;
  const auto r = quad::integrate_pieces(integrand, breaks, opt);
  return kI * (2.0 / pi) * r.value;
}

// ---------------------------------------------------------------------------

void check_preset(const ModelPreset &p) {
  switch (p.id) {
  case PresetId::OmegaPhiTheta:
  case PresetId::OscillatoryCoeffs:
    if (!(p.theta > 0.0 && p.theta < pi))
      throw InvalidPreset("theta must lie in (0, pi), got " +
                          std::to_string(p.theta));
    break;
  case PresetId::PsiPhiB:
  case PresetId::OscKernel:
    if (p.b == 0.0 || !std::isfinite(p.b))
      throw InvalidPreset("b must be finite and nonzero");
    break;
  default:
    break;
  }
}

namespace {
struct NamedPreset {
  PresetId id;
  const char *name;
};
constexpr NamedPreset kNames[] = {
    {PresetId::VPlus, "v_plus"},
    {PresetId::VMinus, "v_minus"},
    {PresetId::OmegaPlus, "omega_plus"},
    {PresetId::OmegaMinus, "omega_minus"},
    {PresetId::OmegaPhi, "omega_phi"},
    {PresetId::OmegaPhiTheta, "omega_phi_theta"},
    {PresetId::Psi0, "psi0"},
    {PresetId::PsiInf, "psi_inf"},
    {PresetId::PsiPhiB, "psi_phi_b"},
    {PresetId::HilbertCoeffs, "hilbert"},
    {PresetId::AlternatingCoeffs, "alternating"},
    {PresetId::OscillatoryCoeffs, "oscillatory"},
    {PresetId::MehlerKernel, "mehler_kernel"},
    {PresetId::OscKernel, "osc_kernel"},
    {PresetId::ExpOverTKernel, "exp_over_t_kernel"},
};
} // namespace

std::string preset_name(const ModelPreset &preset) {
  for (const auto &n : kNames)
    if (n.id == preset.id)
      return n.name;
  return "unknown";
}

ModelPreset preset_from_name(const std::string &name) {
  for (const auto &n : kNames)
    if (name == n.name)
      return ModelPreset{n.id};
  throw InvalidPreset("unknown preset '" + name + "'");
}

bool is_line_preset(const ModelPreset &p) {
  switch (p.id) {
  case PresetId::Psi0:
  case PresetId::PsiInf:
  case PresetId::PsiPhiB:
  case PresetId::MehlerKernel:
  case PresetId::OscKernel:
  case PresetId::ExpOverTKernel:
    return true;
  default:
    return false;
  }
}

bool is_kernel_preset(const ModelPreset &p) {
  return p.id == PresetId::MehlerKernel || p.id == PresetId::OscKernel ||
         p.id == PresetId::ExpOverTKernel;
}

bool is_coefficient_preset(const ModelPreset &p) {
  return p.id == PresetId::HilbertCoeffs ||
         p.id == PresetId::AlternatingCoeffs ||
         p.id == PresetId::OscillatoryCoeffs;
}

// ---------------------------------------------------------------------------

Complex v_symbol(double angle, int sign) {
  const double a = normalize_angle(sign > 0 ? angle + pi : angle);
  if (angular_distance(a, pi) <= kPointTolerance)
    throw_at_jump("v symbol", angle);
  if (a == 0.0)
    return 0.0;
  const double half = 0.5 * a;
  const double nu = -0.5 * std::cos(half) / std::sin(half);
  return -2.0 * kI * std::polar(1.0, -a) * zeta(nu);
}

Complex omega_plus(double angle) {
  const double a = normalize_angle(angle);
  if (angular_distance(a, 0.0) <= kPointTolerance)
    throw_at_jump("omega_plus", angle);
  return kI * (1.0 - a / pi) * std::polar(1.0, -a);
}

Complex omega_minus(double angle) { return omega_plus(angle + pi); }

Complex omega_phi(double phi, double angle) {
  const Complex mu = std::polar(1.0, angle);
  return (std::sin(phi) - mu * std::cos(phi)) * v_symbol(2.0 * angle, -1);
}

Complex omega_phi_theta(double phi, double theta, double angle) {
  const double alpha = std::tan(pi / 4.0 - theta / 2.0);
  const Complex mu = std::polar(1.0, angle);
  const Complex m = (mu - alpha) / (1.0 - alpha * mu);
  return m / mu * omega_phi(phi, std::arg(m));
}

Complex oscillatory_symbol(double theta, double phi, double angle) {
  return kI * (omega_plus(angle - theta) * std::polar(1.0, phi) -
               omega_plus(angle + theta) * std::polar(1.0, -phi));
}

Complex psi0(double nu) { return 2.0 * kI / pi * std::atan(nu); }

Complex psi_inf(double nu) {
  if (nu == 0.0)
    throw_at_jump("psi_inf", nu);
  return 2.0 * kI * zeta(nu);
}

Complex psi_phi_b(double phi, double b, double nu) {
  if (nu == b || nu == -b)
    throw_at_jump("psi_phi_b", nu);
  return 2.0 * std::polar(1.0, -phi) * zeta(nu + b) -
         2.0 * std::polar(1.0, phi) * zeta(nu - b);
}

Complex line_model_zero(Complex jump_zero, double nu) {
  if (nu == 0.0)
    throw_at_jump("line model", nu);
  return jump_zero * zeta(nu);
}

Complex line_model_infinity(Complex jump_inf, double nu) {
  if (nu == 0.0)
    return 0.0;
  return -jump_inf * zeta(-1.0 / nu);
}

Complex line_model_pair(Complex jump_b, double b, double nu) {
  if (nu == b || nu == -b)
    throw_at_jump("line model", nu);
  return jump_b * zeta(nu - b) - std::conj(jump_b) * zeta(nu + b);
}

Complex model_symbol(const ModelPreset &p, double point) {
  check_preset(p);
  switch (p.id) {
  case PresetId::VPlus:
    return v_symbol(point, +1);
  case PresetId::VMinus:
    return v_symbol(point, -1);
  case PresetId::OmegaPlus:
  case PresetId::HilbertCoeffs:
    return omega_plus(point);
  case PresetId::OmegaMinus:
  case PresetId::AlternatingCoeffs:
    return omega_minus(point);
  case PresetId::OmegaPhi:
    return omega_phi(p.phi, point);
  case PresetId::OmegaPhiTheta:
    return omega_phi_theta(p.phi, p.theta, point);
  case PresetId::OscillatoryCoeffs:
    return oscillatory_symbol(p.theta, p.phi, point);
  case PresetId::Psi0:
  case PresetId::ExpOverTKernel:
    return psi0(point);
  case PresetId::PsiInf:
  case PresetId::MehlerKernel:
    return psi_inf(point);
  case PresetId::PsiPhiB:
  case PresetId::OscKernel:
    return psi_phi_b(p.phi, p.b, point);
  }
  throw InvalidPreset("unhandled preset");
}

std::vector<JumpDatum> preset_jumps(const ModelPreset &p) {
  check_preset(p);
  const Complex two_i = 2.0 * kI;
  switch (p.id) {
  case PresetId::VPlus:
  case PresetId::OmegaPlus:
  case PresetId::HilbertCoeffs:
    return {{CirclePoint::plus_one(), two_i}};
  case PresetId::VMinus:
  case PresetId::OmegaMinus:
  case PresetId::AlternatingCoeffs:
    return {{CirclePoint::minus_one(), two_i}};
  case PresetId::OmegaPhi:
    return {{CirclePoint::at(pi / 2.0), 2.0 * std::polar(1.0, p.phi)},
            {CirclePoint::at(-pi / 2.0), -2.0 * std::polar(1.0, -p.phi)}};
  case PresetId::OmegaPhiTheta:
    return {{CirclePoint::at(p.theta), two_i * std::polar(1.0, p.phi - p.theta)},
            {CirclePoint::at(-p.theta),
             two_i * std::polar(1.0, p.theta - p.phi)}};
  case PresetId::OscillatoryCoeffs:
    return {{CirclePoint::at(p.theta), -2.0 * std::polar(1.0, p.phi)},
            {CirclePoint::at(-p.theta), 2.0 * std::polar(1.0, -p.phi)}};
  case PresetId::Psi0:
  case PresetId::ExpOverTKernel:
    return {{LinePoint::infinity(), two_i}};
  case PresetId::PsiInf:
  case PresetId::MehlerKernel:
    return {{LinePoint::finite(0.0), two_i}};
  case PresetId::PsiPhiB:
  case PresetId::OscKernel:
    return {{LinePoint::finite(p.b), -2.0 * std::polar(1.0, p.phi)},
            {LinePoint::finite(-p.b), 2.0 * std::polar(1.0, -p.phi)}};
  }
  throw InvalidPreset("unhandled preset");
}

double discrete_model_coefficients(const ModelPreset &p, long n) {
  if (n < 0)
    throw std::domain_error("coefficient index must be non-negative");
  check_preset(p);
  const double base = 1.0 / (pi * static_cast<double>(n + 1));
  switch (p.id) {
  case PresetId::HilbertCoeffs:
  case PresetId::OmegaPlus:
    return base;
  case PresetId::AlternatingCoeffs:
  case PresetId::OmegaMinus:
    return (n % 2 == 0) ? base : -base;
  case PresetId::OscillatoryCoeffs:
    return 2.0 * std::sin(static_cast<double>(n) * p.theta - p.phi) * base;
  default:
    throw InvalidPreset(preset_name(p) + " has no closed-form matrix entries");
  }
}

double integral_model_kernel(const ModelPreset &p, double t) {
  check_preset(p);
  // The Mehler and oscillatory kernels are regular at t = 0.
  if (!(t >= 0.0) || (t == 0.0 && p.id == PresetId::ExpOverTKernel))
    throw std::domain_error("kernel argument out of range");
  switch (p.id) {
  case PresetId::MehlerKernel:
    return 1.0 / (pi * (2.0 + t));
  case PresetId::OscKernel:
    return 2.0 * std::sin(p.b * t - p.phi) / (pi * (2.0 + t));
  case PresetId::ExpOverTKernel:
    return std::exp(-t) / (pi * t);
  default:
    throw InvalidPreset(preset_name(p) + " is not a kernel preset");
  }
}

// ---------------------------------------------------------------------------

double hankel_compatibility_defect(const TwoByTwoSymbol &sigma,
                                   const std::vector<double> &angles) {
  double worst = 0.0;
  for (double a : angles) {
    const Complex mu = std::polar(1.0, a);
    worst = std::max(worst, std::abs(sigma.s11(a) - mu * sigma.s22(a)));
    worst = std::max(worst, std::abs(sigma.s12(a) - sigma.s21(a)));
  }
  return worst;
}

TwoByTwoSymbol block_symbol(std::function<Complex(double)> omega) {
  auto even = [omega](double half) {
    return 0.5 * (omega(half) + omega(half + pi));
  };
  auto odd = [omega](double half) {
    return 0.5 * (omega(half) - omega(half + pi));
  };
  TwoByTwoSymbol s;
  s.s11 = [even](double a) { return even(0.5 * a); };
  s.s22 = [even](double a) { return std::polar(1.0, -a) * even(0.5 * a); };
  s.s12 = [odd](double a) { return std::polar(1.0, -0.5 * a) * odd(0.5 * a); };
  s.s21 = s.s12;
  return s;
}

MixingMatrix mixing_matrix(double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  MixingMatrix m;
  if (std::abs(c) < 1e-12) {
    m.degenerate = true;
    if (s > 0.0)
      m.y = {{{1.0, 0.0}, {0.0, 1.0}}};
    else
      m.y = {{{0.0, -1.0}, {1.0, 0.0}}};
    return m;
  }
  const double r = 1.0 / std::sqrt(2.0);
  const double lo = std::sqrt(1.0 - s), hi = std::sqrt(1.0 + s);
  m.y = {{{r * c / lo, -r * lo}, {r * c / hi, r * hi}}};
  return m;
}

Matrix2 mixing_conjugate_sign(const MixingMatrix &m) {
  Matrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = m.y[0][i] * m.y[0][j] - m.y[1][i] * m.y[1][j];
  return out;
}

SigmaDecomposition sigma_decomposition(double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  auto v = [](double a) { return v_symbol(a, -1); };
  SigmaDecomposition d;
  d.singular.s11 = [=](double a) { return s * v(a); };
  d.singular.s12 = [=](double a) { return -c * v(a); };
  d.singular.s21 = d.singular.s12;
  d.singular.s22 = [=](double a) { return -s * v(a); };
  auto zero = [](double) { return Complex{}; };
  d.lipschitz.s11 = zero;
  d.lipschitz.s12 = zero;
  d.lipschitz.s21 = zero;
  d.lipschitz.s22 = [=](double a) -> Complex {
    if (angular_distance(a, pi) <= kPointTolerance)
      return 0.0;
    return s * (1.0 + std::polar(1.0, -a)) * v(a);
  };
  d.mixing = mixing_matrix(phi);
  return d;
}

} // namespace hankel::models
