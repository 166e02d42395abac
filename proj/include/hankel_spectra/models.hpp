#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hankel_spectra/points.hpp"

namespace hankel::models {

// ---------------------------------------------------------------------------
// The odd function zeta(nu) = (1/pi) int_0^inf sin(nu t)/(2+t) dt.
// ---------------------------------------------------------------------------

/// zeta(nu) for nu != 0. For nu > 0 this is f(2 nu)/pi with the sine-integral
/// auxiliary function f, i.e. (sin 2nu Ci(2nu) + cos 2nu (pi/2 - Si(2nu)))/pi.
/// zeta(0) returns 0 (the average of the one-sided limits); zeta(+-inf) = 0.
double zeta(double nu);

/// One-sided limits zeta(+0) = 1/2 and zeta(-0) = -1/2.
double zeta_limit(int side);

/// Second route: zeta(nu) = (1/pi) int_0^inf e^{-2 nu x}/(1 + x^2) dx (nu > 0),
/// from 1/(2+t) = int_0^inf e^{-(2+t)s} ds; absolutely convergent.
double zeta_laplace(double nu);

/// psi_0(nu) = (2i/pi) int_0^inf sin(t nu) e^{-t}/t dt by adaptive quadrature
/// (the closed form is (2i/pi) arctan nu).
Complex psi0_quadrature(double nu);

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

enum class PresetId {
  VPlus,
  VMinus,
  OmegaPlus,
  OmegaMinus,
  OmegaPhi,
  OmegaPhiTheta,
  Psi0,
  PsiInf,
  PsiPhiB,
  HilbertCoeffs,
  AlternatingCoeffs,
  OscillatoryCoeffs,
  MehlerKernel,
  OscKernel,
  ExpOverTKernel,
};

struct ModelPreset {
  PresetId id = PresetId::OmegaPlus;
  double phi = 0.0;
  double theta = 0.0;
  double b = 0.0;

  static ModelPreset v_plus() { return {PresetId::VPlus}; }
  static ModelPreset v_minus() { return {PresetId::VMinus}; }
  static ModelPreset omega_plus() { return {PresetId::OmegaPlus}; }
  static ModelPreset omega_minus() { return {PresetId::OmegaMinus}; }
  static ModelPreset omega_phi(double phi) { return {PresetId::OmegaPhi, phi}; }
  static ModelPreset omega_phi_theta(double phi, double theta) {
    return {PresetId::OmegaPhiTheta, phi, theta};
  }
  static ModelPreset psi0() { return {PresetId::Psi0}; }
  static ModelPreset psi_inf() { return {PresetId::PsiInf}; }
  static ModelPreset psi_phi_b(double phi, double b) {
    return {PresetId::PsiPhiB, phi, 0.0, b};
  }
  static ModelPreset hilbert() { return {PresetId::HilbertCoeffs}; }
  static ModelPreset alternating() { return {PresetId::AlternatingCoeffs}; }
  static ModelPreset oscillatory(double theta, double phi) {
    return {PresetId::OscillatoryCoeffs, phi, theta};
  }
  static ModelPreset mehler_kernel() { return {PresetId::MehlerKernel}; }
  static ModelPreset osc_kernel(double b, double phi) {
    return {PresetId::OscKernel, phi, 0.0, b};
  }
  static ModelPreset exp_over_t_kernel() { return {PresetId::ExpOverTKernel}; }
};

/// Throws InvalidPreset when a parameter constraint fails
/// (theta in (0, pi), b != 0).
void check_preset(const ModelPreset &preset);

std::string preset_name(const ModelPreset &preset);
/// Inverse of preset_name for the identifier part (parameters left at 0).
ModelPreset preset_from_name(const std::string &name);

/// True when the preset's symbol lives on the real line (argument nu)
/// rather than on the circle (argument: angle of mu).
bool is_line_preset(const ModelPreset &preset);
bool is_kernel_preset(const ModelPreset &preset);
bool is_coefficient_preset(const ModelPreset &preset);

// ---------------------------------------------------------------------------
// Model symbols. Circle symbols take the angle of mu; line symbols take nu.
// ---------------------------------------------------------------------------

/// v(mu) = -2i mu^{-1} zeta((i/2)(1+mu)/(1-mu)); for |mu| = 1 the Cayley
/// argument equals -cot(angle/2)/2. v_+(mu) = v(-mu), v_-(mu) = v(mu).
/// sign = +1 selects v_+, -1 selects v_-.
Complex v_symbol(double angle, int sign);

/// omega_+(e^{i psi}) = i (1 - psi/pi) e^{-i psi}, psi in [0, 2pi).
Complex omega_plus(double angle);
Complex omega_minus(double angle);
/// (sin phi - mu cos phi) v(mu^2): jumps 2e^{i phi} at i, -2e^{-i phi} at -i.
Complex omega_phi(double phi, double angle);
/// Conformal image of omega_phi with alpha = tan(pi/4 - theta/2): jumps
/// 2i e^{i(phi-theta)} at e^{i theta} and 2i e^{i(theta-phi)} at e^{-i theta}.
Complex omega_phi_theta(double phi, double theta, double angle);
/// i(omega_+(e^{-i theta} mu) e^{i phi} - omega_+(e^{i theta} mu) e^{-i phi});
/// its Fourier coefficients are 2 sin(n theta - phi)/(pi(n+1)).
Complex oscillatory_symbol(double theta, double phi, double angle);

/// Line symbol of the kernel e^{-t}/(pi t): (2i/pi) arctan(nu).
Complex psi0(double nu);
/// Line symbol of the Mehler kernel 1/(pi(2+t)): 2i zeta(nu).
Complex psi_inf(double nu);
/// 2e^{-i phi} zeta(nu + b) - 2e^{i phi} zeta(nu - b).
Complex psi_phi_b(double phi, double b, double nu);

/// Generic line models for one jump: jump_zero * zeta(nu) carries a jump at
/// nu = 0, -jump_inf * zeta(-1/nu) a jump at infinity, and
/// jump_b zeta(nu - b) + jump_minus_b zeta(nu + b) a pair at (b, -b).
Complex line_model_zero(Complex jump_zero, double nu);
Complex line_model_infinity(Complex jump_inf, double nu);
Complex line_model_pair(Complex jump_b, double b, double nu);

/// Symbol of any preset (kernel presets return their line symbol,
/// coefficient presets their generating circle symbol). Throws
/// EvaluationAtJump at a jump location.
Complex model_symbol(const ModelPreset &preset, double point);

/// Jumps carried by the preset's symbol.
std::vector<JumpDatum> preset_jumps(const ModelPreset &preset);

/// Matrix entries: Hilbert 1/(pi(n+1)), alternating (-1)^n/(pi(n+1)),
/// oscillatory 2 sin(n theta - phi)/(pi(n+1)).
double discrete_model_coefficients(const ModelPreset &preset, long n);

/// Kernel profile h(t) (the operator kernel is h(t+s)).
double integral_model_kernel(const ModelPreset &preset, double t);

// ---------------------------------------------------------------------------
// 2x2 block symbols
// ---------------------------------------------------------------------------

using Matrix2c = std::array<std::array<Complex, 2>, 2>;
using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Matrix symbol evaluated on the circle (argument: angle of mu).
struct TwoByTwoSymbol {
  std::function<Complex(double)> s11, s12, s21, s22;

  Matrix2c operator()(double angle) const {
    return {{{s11(angle), s12(angle)}, {s21(angle), s22(angle)}}};
  }
};

/// Max pointwise violation of s11(mu) = mu s22(mu), s12 = s21 over angles.
double hankel_compatibility_defect(const TwoByTwoSymbol &sigma,
                                   const std::vector<double> &angles);

/// Block symbol of the even/odd split: s11(mu) = w_even(mu^{1/2}),
/// s22(mu) = mu^{-1} w_even(mu^{1/2}), s12 = s21 = mu^{-1/2} w_odd(mu^{1/2}).
TwoByTwoSymbol block_symbol(std::function<Complex(double)> omega);

struct MixingMatrix {
  Matrix2 y{};
  /// Set when |cos phi| < 1e-12 and the limit permutation matrix is returned.
  bool degenerate = false;
};

struct SigmaDecomposition {
  TwoByTwoSymbol singular;  // Sigma^0_phi
  TwoByTwoSymbol lipschitz; // tilde Sigma_phi
  MixingMatrix mixing;      // Y_phi
};

MixingMatrix mixing_matrix(double phi);
SigmaDecomposition sigma_decomposition(double phi);

/// Y^T diag(1, -1) Y.
Matrix2 mixing_conjugate_sign(const MixingMatrix &y);

} // namespace hankel::models
