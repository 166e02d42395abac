#include "hankel_spectra/legendre.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/quadrature.hpp"
#include "hankel_spectra/special_functions.hpp"

namespace hankel::models {

namespace {

using std::numbers::pi;
using C = std::complex<double>;

// Gamma(i tau) 2^{1/2 + i tau} / (sqrt(pi) Gamma(1/2 + i tau)).
C asymptotic_prefactor(double tau) {
  const C lg = special::log_gamma(C(0.0, tau)) -
               special::log_gamma(C(0.5, tau)) +
               C(0.5, tau) * std::log(2.0);
  return std::exp(lg) / std::sqrt(pi);
}

// Coefficients (a)_k (b)_k / ((c)_k k!) of the hypergeometric series.
std::vector<C> hypergeometric_coefficients(double tau, std::size_t count) {
  const C a(0.25, -0.5 * tau), b(0.75, -0.5 * tau), c(1.0, -tau);
  std::vector<C> out(count);
  C term = 1.0;
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = term;
    const double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0));
  }
  return out;
}

} // namespace

double legendre_conical(double tau, double x) {
  if (!(x >= 1.0))
    throw std::domain_error("legendre_conical: x must be >= 1");
  if (x == 1.0)
    return 1.0;
  const double a = std::acosh(x);
  auto integrand = [&](double u) {
    const double u2 = u * u;
    const double denom = 4.0 * std::sinh(a - 0.5 * u2) * std::sinh(0.5 * u2);
    if (!(denom > 0.0)) {
      // u -> 0 limit of 2u / sqrt(denom)
      return 2.0 * std::cos(tau * a) / std::sqrt(2.0 * std::sinh(a));
    }
    return 2.0 * u * std::cos(tau * (a - u2)) / std::sqrt(denom);
  };
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-14;
  opt.throw_on_failure = false;
  const auto r = quad::integrate(integrand, 0.0, std::sqrt(a), opt);
  if (!r.converged && r.error > 1e-11)
    throw QuadratureNonConvergence("legendre_conical tau=" +
                                   std::to_string(tau) +
                                   " x=" + std::to_string(x));
  return 2.0 / pi * r.value;
}

double legendre_conical_asymptotic(double tau, double x) {
  return std::real(asymptotic_prefactor(tau) * std::pow(C(x, 0.0), C(-0.5, tau)));
}

double legendre_conical_hypergeometric(double tau, double x) {
  if (!(tau > 0.0) || !(x > 1.0))
    throw std::domain_error("hypergeometric form needs tau > 0 and x > 1");
  const auto coef = hypergeometric_coefficients(tau, 400);
  const double z = 1.0 / (x * x);
  C sum = 0.0;
  double zk = 1.0;
  for (const auto &c : coef) {
    const C term = c * zk;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum))
      break;
    zk *= z;
  }
  return std::real(asymptotic_prefactor(tau) *
                   std::pow(C(x, 0.0), C(-0.5, tau)) * sum);
}

MehlerIdentity mehler_identity(double tau, double t, double truncation) {
  if (!(tau > 0.0))
    throw std::domain_error("mehler_identity: tau must be positive");
  const double q = 1.0 + t;
  auto integrand = [&](double u) {
    const double y = std::exp(u); // y = 1 + s
    return legendre_conical(tau, y) * y / (q + y);
  };
  quad::Options opt;
  opt.abs_tol = 1e-12;
  const auto body = quad::integrate(integrand, 0.0, std::log1p(truncation), opt);

  // Tail: P(y) = Re(C sum_k c_k y^{-1/2 + i tau - 2k}) and
  // int_Y^inf y^p/(y+q) dy = sum_m (-q)^m Y^{p-m} / (m - p).
  const double big_y = 1.0 + truncation;
  const auto coef = hypergeometric_coefficients(tau, 6);
  C tail = 0.0;
  for (std::size_t k = 0; k < coef.size(); ++k) {
    const C p(-0.5 - 2.0 * static_cast<double>(k), tau);
    C inner = 0.0;
    for (int m = 0; m < 200; ++m) {
      const C term = std::pow(-q, m) * std::pow(C(big_y, 0.0), p - double(m)) /
                     (double(m) - p);
      inner += term;
      if (std::abs(term) < 1e-20)
        break;
    }
    tail += coef[k] * inner;
  }
  MehlerIdentity out;
  out.lhs = body.value + std::real(asymptotic_prefactor(tau) * tail);
  out.rhs = pi / std::cosh(pi * tau) * legendre_conical(tau, 1.0 + t);
  out.residual = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

std::vector<double> mehler_fock_transform(const std::function<double(double)> &f,
                                          double window,
                                          const std::vector<double> &tau_grid,
                                          double abs_tol) {
  std::vector<double> out;
  out.reserve(tau_grid.size());
  quad::Options opt;
  opt.abs_tol = abs_tol;
  for (double tau : tau_grid) {
    if (tau <= 0.0) {
      out.push_back(0.0);
      continue;
    }
    auto integrand = [&](double u) {
      const double y = std::exp(u);
      const double fv = f(y - 1.0);
      if (fv == 0.0)
        return 0.0;
      return legendre_conical(tau, y) * fv * y;
    };
    const auto r = quad::integrate(integrand, 0.0, std::log1p(window), opt);
    out.push_back(std::sqrt(tau * std::tanh(pi * tau)) * r.value);
  }
  return out;
}

} // namespace hankel::models
