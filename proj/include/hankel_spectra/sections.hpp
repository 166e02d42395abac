#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hankel_spectra/eigensolver.hpp"
#include "hankel_spectra/models.hpp"
#include "hankel_spectra/predict.hpp"
#include "hankel_spectra/symbols.hpp"

namespace hankel::sections {

using linalg::SymmetricMatrix;

enum class CoefficientSource { Preset, Fourier, User };

struct HankelCoefficients {
  std::vector<double> values;
  CoefficientSource provenance = CoefficientSource::User;
  std::string label;

  std::size_t size() const { return values.size(); }
};

/// h_0..h_{count-1} of a coefficient preset (Hilbert, alternating,
/// oscillatory; omega_+/- map to Hilbert/alternating).
HankelCoefficients preset_coefficients(const models::ModelPreset &preset,
                                       std::size_t count);

/// kappa_+ h^{(+)} + kappa_- h^{(-)} + sum_j kappa_j h(theta_j, phi_j), with the
/// (n+1) denominators of the concrete model matrices.
HankelCoefficients model_coefficients(const predict::CoefficientModel &model,
                                      std::size_t count);

HankelCoefficients symbol_coefficients(const symbols::SymbolSpec &spec,
                                       std::size_t count,
                                       const symbols::FourierOptions &opt = {});

HankelCoefficients user_coefficients(std::vector<double> values,
                                     std::string label = "user");

/// A[i][j] = h_{i+j}, 0 <= i, j < N. Needs at least 2N-1 coefficients.
SymmetricMatrix hankel_matrix(const HankelCoefficients &coeffs, std::size_t n);

/// Max deviation between the even/odd-permuted section and the block
/// matrix [[A, B], [B, C]] with A = h_{2(k+j)}, B = h_{2(k+j)+1},
/// C = h_{2(k+j)+2}. N even, at least 2N coefficients.
double block_hankel_interleave_check(const HankelCoefficients &coeffs,
                                     std::size_t n);

/// Gauss-Legendre panels in u on [-L, L], t = e^u; weights include dt/du.
struct QuadratureGrid {
  double half_width = 8.0;
  std::size_t panels = 20;
  std::size_t order = 20;
  std::vector<double> nodes;   // t_i, strictly increasing
  std::vector<double> weights; // w_i > 0

  static QuadratureGrid exponential(double half_width, std::size_t panels,
                                    std::size_t order);
  std::size_t size() const { return nodes.size(); }
};

/// A_ij = sqrt(w_i w_j) h(t_i + t_j).
SymmetricMatrix nystrom_matrix(const std::function<double(double)> &kernel,
                               const QuadratureGrid &grid);
SymmetricMatrix nystrom_matrix(const models::ModelPreset &kernel_preset,
                               const QuadratureGrid &grid);

/// Kernel h_inf/(pi(2+t)) + sum_j 2 h_j sin(b_j t - phi_j)/(pi(2+t)) +
/// h_0 e^{-t}/(pi t).
std::function<double(double)> kernel_model_function(const predict::KernelModel &model);

enum class SpectrumSource { Section, Nystrom };

struct SectionSpectrum {
  std::size_t n = 0;
  std::vector<double> eigenvalues; // ascending
  SpectrumSource source = SpectrumSource::Section;
  double elapsed = 0.0; // seconds
};

SectionSpectrum section_spectrum(const HankelCoefficients &coeffs, std::size_t n);
SectionSpectrum nystrom_spectrum(const std::function<double(double)> &kernel,
                                 const QuadratureGrid &grid);

struct FillReport {
  std::vector<double> fill_distance; // one per band
  std::size_t leak_count = 0;
  std::vector<double> leak_values;
};

/// Probe grid: 200 uniform points on the central 90% of every band.
/// fill_distance is +inf when there are no eigenvalues.
FillReport band_fill_metrics(const SectionSpectrum &spectrum,
                             const std::vector<predict::Band> &bands,
                             double tol = 0.02);

enum class LeakClass { Discrete, Error };

struct LeakClassification {
  std::vector<double> values;
  std::vector<LeakClass> classes;
  bool all_discrete = true;
};

/// A leak of the finer run is "discrete" when the coarser run has a leak
/// within `stability` of it, and "error" otherwise.
LeakClassification classify_leaks(const FillReport &coarse, const FillReport &fine,
                                  double stability = 1e-3);

/// Cauchy interlacing of spec(H_N) inside spec(H_{N+1}), slack 1e-10.
bool interlacing_check(const HankelCoefficients &coeffs, std::size_t n,
                       double slack = 1e-10);

/// q(mu) = prod_a q_a(mu)^beta with q_a = |ln|mu - a||^{-1} on |mu - a| <= 1/e
/// and 1 elsewhere. No locations means q = 1.
struct WeightSpec {
  std::vector<CirclePoint> locations;
  double beta = 2.0;
};

double weight_value(const WeightSpec &weight, double angle);

/// Fourier coefficients q_k, k = -(n-1)..n-1 (index k + n - 1), from 2^16
/// samples and a real FFT.
std::vector<std::complex<double>> weight_coefficients(const WeightSpec &weight,
                                                      std::size_t n);

/// Largest singular value of Q_N (H_N - z)^{-1} Q_N per z: top Ritz value of
/// `iterations` Lanczos steps on the normal operator, from a seeded start.
/// Throws SingularShift when z is within 1e-12 of an eigenvalue of H_N.
std::vector<double> weighted_resolvent_probe(const HankelCoefficients &coeffs,
                                             const WeightSpec &weight,
                                             const std::vector<std::complex<double>> &z,
                                             std::size_t n,
                                             std::size_t iterations = 100);

} // namespace hankel::sections
