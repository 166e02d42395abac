#pragma once

#include <functional>
#include <vector>

namespace hankel::models {

/// Conical Legendre function P_{-1/2+i tau}(x), x >= 1, from the
/// Mehler-Dirichlet integral
///   P(cosh a) = (2/pi) int_0^a cos(tau s) / sqrt(2 cosh a - 2 cosh s) ds
/// with s = a - u^2 removing the endpoint singularity.
double legendre_conical(double tau, double x);

/// Leading large-x term
///   Re( Gamma(i tau) / (sqrt(pi) Gamma(1/2 + i tau)) 2^{1/2+i tau} x^{-1/2+i tau} ).
double legendre_conical_asymptotic(double tau, double x);

/// Hypergeometric form Re(C x^{-1/2+i tau} F(1/4-i tau/2, 3/4-i tau/2;
/// 1-i tau; x^{-2})), summed directly. Intended for x >= 2 and tau > 0.
double legendre_conical_hypergeometric(double tau, double x);

struct MehlerIdentity {
  double lhs = 0.0;      // int_0^inf P(1+s)/(2+t+s) ds
  double rhs = 0.0;      // pi/cosh(pi tau) P(1+t)
  double residual = 0.0; // |lhs - rhs| / |rhs|
};

/// Evaluates both sides of Mehler's formula. The integral is computed on
/// [0, truncation] in the variable u = ln(1+s) and the remaining tail is
/// added from the term-wise integrated large-argument expansion of P.
MehlerIdentity mehler_identity(double tau, double t, double truncation = 1e4);

inline double mehler_identity_residual(double tau, double t) {
  return mehler_identity(tau, t).residual;
}

/// (Psi f)(tau) = sqrt(tau tanh(pi tau)) int_0^window P_{-1/2+i tau}(1+t) f(t) dt
/// for every tau on the grid; f is taken to vanish beyond the window.
std::vector<double> mehler_fock_transform(const std::function<double(double)> &f,
                                          double window,
                                          const std::vector<double> &tau_grid,
                                          double abs_tol = 1e-10);

} // namespace hankel::models
