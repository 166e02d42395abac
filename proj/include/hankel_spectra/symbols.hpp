#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "hankel_spectra/models.hpp"
#include "hankel_spectra/points.hpp"

namespace hankel::symbols {

enum class Representation { Circle, Line };

struct SymbolSpec;

/// Symbol assembled from its own jumps: kappa_+ v_+ + kappa_- v_- +
/// sum_j kappa_j omega_{phi_j, theta_j} on the circle (phi_j = psi_j +
/// theta_j - pi/2), or the zeta-based line models on the line, plus a
/// continuous tail sum_n tail[n] mu^n (circle only).
struct JumpModelBody {
  std::vector<double> tail;
};

/// scale * preset + tail. The jumps are those of the preset, scaled.
struct PresetBody {
  models::ModelPreset preset;
  double scale = 1.0;
  std::vector<double> tail;
};

/// omega^{(alpha)}(mu) = mu^{-1} m(mu) omega(m(mu)), m(mu) = (mu-alpha)/(1-alpha mu).
struct ConformalBody {
  std::shared_ptr<const SymbolSpec> source;
  double alpha = 0.0;
};

/// psi(nu) = -mu omega(mu) with mu = (nu - i/2)/(nu + i/2).
struct CayleyBody {
  std::shared_ptr<const SymbolSpec> source;
};

using SymbolBody =
    std::variant<JumpModelBody, PresetBody, ConformalBody, CayleyBody>;

struct SymbolSpec {
  Representation representation = Representation::Circle;
  std::vector<JumpDatum> jumps;
  SymbolBody body = JumpModelBody{};
  /// Log-Hoelder exponent of the one-sided continuity at every jump.
  double beta0 = 3.0;
};

struct PairJump {
  double theta = 0.0; // location e^{i theta}, theta in (0, pi)
  double kappa = 0.0; // > 0
  double psi = 0.0;   // kappa(a) = 2 kappa e^{i psi}
};

struct NormalizedJumps {
  double kappa_plus = 0.0;  // kappa(1) = 2i kappa_plus
  double kappa_minus = 0.0; // kappa(-1) = 2i kappa_minus
  std::vector<PairJump> pairs;
};

struct LinePairJump {
  double b = 0.0;     // location b < 0 (partner at -b)
  double kappa = 0.0; // > 0
  double phi = 0.0;   // jump(b) = 2 kappa e^{i phi}
};

struct LineNormalizedJumps {
  double kappa_infinity = 0.0; // jump(inf) = 2i kappa_infinity
  double kappa_zero = 0.0;     // jump(0) = 2i kappa_zero
  std::vector<LinePairJump> pairs;
};

/// Spec built from a preset; its jumps are the preset's jumps times scale.
SymbolSpec make_preset_symbol(const models::ModelPreset &preset,
                              double scale = 1.0);

/// Enforces the self-adjointness structure: drops zero jumps, inserts
/// missing conjugate partners (-conj kappa at conj a, or at -b), rejects
/// non-imaginary jumps at self-conjugate points, duplicate locations
/// (closer than 1e-9) and beta0 <= 0. Jumps come back sorted by location.
SymbolSpec validate_symbol(const SymbolSpec &spec);

NormalizedJumps normalize_jumps(const SymbolSpec &spec);
NormalizedJumps normalize_jumps(const std::vector<JumpDatum> &circle_jumps);
LineNormalizedJumps normalize_line_jumps(const std::vector<JumpDatum> &line_jumps);

/// Inverse of normalize_jumps: the jump list the normalized data encodes.
std::vector<JumpDatum> reconstruct_jumps(const NormalizedJumps &nj);

/// Circle symbols take a CirclePoint; line symbols take nu.
Complex evaluate(const SymbolSpec &spec, const CirclePoint &point);
Complex evaluate(const SymbolSpec &spec, double nu);

enum class FourierMode {
  /// Closed forms for presets that have them, quadrature otherwise.
  Auto,
  /// Adaptive quadrature for every body.
  Quadrature,
};

struct FourierOptions {
  FourierMode mode = FourierMode::Auto;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 20000;
};

/// h_n = int_T omega(mu) mu^{-n} dm(mu), n = 0..count-1, by per-arc adaptive
/// Gauss-Kronrod with arcs delimited by the jump locations. For self-adjoint
/// specs the values are real; imaginary parts above 1e-10 throw.
std::vector<double> fourier_coefficients(const SymbolSpec &spec,
                                         std::size_t count,
                                         const FourierOptions &opt = {});

/// Line location of the Cayley image of a circle point: b = (i/2)(1+a)/(1-a)
/// (infinity for a = 1).
LinePoint cayley_location(const CirclePoint &a);
CirclePoint inverse_cayley_location(const LinePoint &b);

/// Translates circle jumps to line jumps. The factor -mu of the symbol
/// relation gives -a kappa at b for complex a; at a = -1 the factor is +1,
/// and at a = 1 the sign flip of -mu is compensated by the orientation
/// reversal at infinity, so kappa(1) and kappa(-1) carry over unchanged.
std::vector<JumpDatum> circle_to_line_jumps(const std::vector<JumpDatum> &jumps);
std::vector<JumpDatum> line_to_circle_jumps(const std::vector<JumpDatum> &jumps);

SymbolSpec circle_to_line(const SymbolSpec &spec);

} // namespace hankel::symbols
