#pragma once

#include <string>
#include <vector>

#include "hankel_spectra/symbols.hpp"

namespace hankel::predict {

/// Closed segment between two complex points; orientation is irrelevant.
struct Segment {
  Complex a;
  Complex b;

  bool same_as(const Segment &o, double tol = 1e-12) const;
  bool is_real(double tol = 1e-12) const {
    return std::abs(a.imag()) <= tol && std::abs(b.imag()) <= tol;
  }
};

enum class BandKind { AC, Modulus };

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  int multiplicity = 1;
  BandKind kind = BandKind::AC;
  /// Which jump produced the band ("plus", "minus", "pair:<theta>", ...).
  std::string origin;
};

/// Band with endpoints sorted so that lo <= hi.
Band make_band(double x, double y, BandKind kind, std::string origin);

struct SpectralPrediction {
  std::vector<Segment> essential;
  std::vector<Band> ac_bands;
  std::vector<Band> modulus_bands;
  std::vector<double> thresholds;
  /// Regularity flags: the band description of the a.c. part needs
  /// beta0 > 1 (alpha0 > 2 for asymptotic models); finiteness of eigenvalue
  /// multiplicities away from thresholds needs beta0 > 2 (alpha0 > 3).
  bool ac_theorem_applies = false;
  bool point_spectrum_theorem_applies = false;
};

/// Power's formula on circle jumps: [0, kappa(+-1)/(2i)] and, per conjugate
/// pair, [-w, w] with w = (2i)^{-1} sqrt(kappa(a) kappa(conj a)). A complex
/// jump without its partner contributes the point {0}.
std::vector<Segment> essential_spectrum(const std::vector<JumpDatum> &circle_jumps);

/// [0, kappa_+], [0, kappa_-], [-kappa_j, kappa_j]; zero kappas are skipped.
std::vector<Band> ac_spectrum(const symbols::NormalizedJumps &nj);
/// Line version: [0, kappa_0], [0, kappa_inf], [-kappa_j, kappa_j].
std::vector<Band> ac_spectrum(const symbols::LineNormalizedJumps &nj);

/// [0, |kappa(a)|/2] per jump point, both members of a pair included.
std::vector<Band> modulus_spectrum(const std::vector<JumpDatum> &jumps);

/// {0} together with every band endpoint, sorted, deduplicated at 1e-12.
std::vector<double> thresholds(const std::vector<Band> &bands);
std::vector<double> thresholds(const SpectralPrediction &prediction);

/// Full prediction for a circle or line spec (validated internally).
SpectralPrediction predict(const symbols::SymbolSpec &spec);

struct CoefficientTerm {
  double kappa = 0.0;
  double theta = 0.0; // in (0, pi)
  double phi = 0.0;
};

/// h_n ~ (pi n)^{-1} (kappa_+ + (-1)^n kappa_- + 2 sum_j kappa_j sin(n theta_j - phi_j)).
struct CoefficientModel {
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  std::vector<CoefficientTerm> terms;
  double alpha0 = 4.0;
};

SpectralPrediction predict_from_coefficient_model(const CoefficientModel &model);

struct KernelTerm {
  double h = 0.0;
  double b = 0.0; // nonzero
  double phi = 0.0;
};

/// h(t) ~ (pi t)^{-1} (h_inf + 2 sum_j h_j sin(b_j t - phi_j)) at infinity
/// and ~ h_0 (pi t)^{-1} at zero.
struct KernelModel {
  double h0 = 0.0;
  double h_infinity = 0.0;
  std::vector<KernelTerm> terms;
  double alpha0 = 4.0;
  /// Kernel integrable at t = 0: the [0, h0] band is dropped.
  bool regular_at_zero = false;
};

SpectralPrediction predict_from_kernel_model(const KernelModel &model);

/// Union of the bands as disjoint sorted intervals (plotting view).
std::vector<std::pair<double, double>> coverage(const std::vector<Band> &bands,
                                                double tol = 1e-12);

/// Union of the real segments of an essential spectrum as disjoint intervals.
std::vector<std::pair<double, double>> real_coverage(const std::vector<Segment> &segments,
                                                     double tol = 1e-12);

const char *band_kind_name(BandKind kind);

} // namespace hankel::predict
