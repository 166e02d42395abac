#include "hankel_spectra/sections.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/quadrature.hpp"

namespace hankel::sections {

namespace {

using Complex = std::complex<double>;
using std::numbers::pi;

constexpr std::size_t kWeightSamples = std::size_t{1} << 16;
constexpr std::size_t kProbesPerBand = 200;

void require_coefficients(const HankelCoefficients &c, std::size_t needed,
                          const char *what) {
  if (c.size() < needed)
    throw InsufficientCoefficients(std::string(what) + " needs " +
                                   std::to_string(needed) + " coefficients, got " +
                                   std::to_string(c.size()));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double distance_to_sorted(const std::vector<double> &sorted, double x) {
  if (sorted.empty())
    return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double d = std::numeric_limits<double>::infinity();
  if (it != sorted.end())
    d = *it - x;
  if (it != sorted.begin())
    d = std::min(d, x - *std::prev(it));
  return d;
}

// FFTW's planner is not reentrant.
std::mutex &fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// y = T x for the Toeplitz matrix T_{jk} = c[j - k + n - 1].
void toeplitz_apply(const std::vector<Complex> &c, const std::vector<Complex> &x,
                    std::vector<Complex> &y, bool adjoint) {
  const std::size_t n = x.size();
  y.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      // adjoint: (T^H)_{jk} = conj(T_{kj}) = conj(c[k - j + n - 1])
      acc += adjoint ? std::conj(c[k + n - 1 - j]) * x[k] : c[j + n - 1 - k] * x[k];
    }
    y[j] = acc;
  }
}

double norm2(const std::vector<Complex> &x) {
  double s = 0.0;
  for (const auto &v : x)
    s += std::norm(v);
  return std::sqrt(s);
}

} // namespace

// ---------------------------------------------------------------------------

HankelCoefficients preset_coefficients(const models::ModelPreset &preset,
                                       std::size_t count) {
  HankelCoefficients c;
  c.provenance = CoefficientSource::Preset;
  c.label = models::preset_name(preset);
  c.values.resize(count);
  for (std::size_t n = 0; n < count; ++n)
    c.values[n] = models::discrete_model_coefficients(preset, static_cast<long>(n));
  return c;
}

HankelCoefficients model_coefficients(const predict::CoefficientModel &model,
                                      std::size_t count) {
  // Reuse the duplicate/range checks of the prediction.
  (void)predict::predict_from_coefficient_model(model);
  HankelCoefficients c;
  c.provenance = CoefficientSource::Preset;
  c.label = "coefficient_model";
  c.values.assign(count, 0.0);
  for (std::size_t n = 0; n < count; ++n) {
    const double base = 1.0 / (pi * static_cast<double>(n + 1));
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    double h = (model.kappa_plus + sign * model.kappa_minus) * base;
    for (const auto &t : model.terms)
      h += t.kappa * 2.0 * std::sin(static_cast<double>(n) * t.theta - t.phi) * base;
    c.values[n] = h;
  }
  return c;
}

HankelCoefficients symbol_coefficients(const symbols::SymbolSpec &spec,
                                       std::size_t count,
                                       const symbols::FourierOptions &opt) {
  HankelCoefficients c;
  c.provenance = CoefficientSource::Fourier;
  c.label = "fourier";
  c.values = symbols::fourier_coefficients(symbols::validate_symbol(spec), count, opt);
  return c;
}

HankelCoefficients user_coefficients(std::vector<double> values, std::string label) {
  for (double v : values)
    if (!std::isfinite(v))
      throw ValidationError("non-finite Hankel coefficient");
  HankelCoefficients c;
  c.provenance = CoefficientSource::User;
  c.label = std::move(label);
  c.values = std::move(values);
  return c;
}

SymmetricMatrix hankel_matrix(const HankelCoefficients &coeffs, std::size_t n) {
  require_coefficients(coeffs, n == 0 ? 0 : 2 * n - 1, "hankel_matrix");
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    double *row = a.row(i);
    for (std::size_t j = 0; j < n; ++j)
      row[j] = coeffs.values[i + j];
  }
  return a;
}

double block_hankel_interleave_check(const HankelCoefficients &coeffs, std::size_t n) {
  if (n % 2 != 0)
    throw ValidationError("interleave check needs an even order");
  require_coefficients(coeffs, 2 * n, "block_hankel_interleave_check");
  const SymmetricMatrix h = hankel_matrix(coeffs, n);
  const std::size_t m = n / 2;
  // Permuted index: p < m -> 2p (even), p >= m -> 2(p - m) + 1 (odd).
  auto original = [m](std::size_t p) { return p < m ? 2 * p : 2 * (p - m) + 1; };
  const auto &c = coeffs.values;
  double worst = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const double permuted = h(original(p), original(q));
      const std::size_t k = p % m, j = q % m;
      double block;
      if (p < m && q < m)
        block = c[2 * (k + j)];
      else if (p >= m && q >= m)
        block = c[2 * (k + j) + 2];
      else
        block = c[2 * (k + j) + 1];
      worst = std::max(worst, std::abs(permuted - block));
    }
  }
  return worst;
}

QuadratureGrid QuadratureGrid::exponential(double half_width, std::size_t panels,
                                           std::size_t order) {
  if (!(half_width > 0.0) || panels == 0 || order == 0)
    throw ValidationError("invalid Nystrom grid parameters");
  QuadratureGrid g;
  g.half_width = half_width;
  g.panels = panels;
  g.order = order;
  const auto rule = quad::gauss_legendre(order);
  std::vector<std::size_t> idx(order);
  for (std::size_t i = 0; i < order; ++i)
    idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return rule.nodes[a] < rule.nodes[b]; });
  const double h = 2.0 * half_width / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = -half_width + h * static_cast<double>(p);
    for (std::size_t i : idx) {
      const double u = a + 0.5 * h * (rule.nodes[i] + 1.0);
      const double t = std::exp(u);
      g.nodes.push_back(t);
      g.weights.push_back(0.5 * h * rule.weights[i] * t);
    }
  }
  return g;
}

SymmetricMatrix nystrom_matrix(const std::function<double(double)> &kernel,
                               const QuadratureGrid &grid) {
  const std::size_t n = grid.size();
  SymmetricMatrix a(n);
  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i)
    sw[i] = std::sqrt(grid.weights[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      a.set(i, j, sw[i] * sw[j] * kernel(grid.nodes[i] + grid.nodes[j]));
  return a;
}

SymmetricMatrix nystrom_matrix(const models::ModelPreset &preset,
                               const QuadratureGrid &grid) {
  if (!models::is_kernel_preset(preset))
    throw InvalidPreset(models::preset_name(preset) + " is not a kernel preset");
  models::check_preset(preset);
  return nystrom_matrix(
      [preset](double t) { return models::integral_model_kernel(preset, t); }, grid);
}

std::function<double(double)> kernel_model_function(const predict::KernelModel &model) {
  (void)predict::predict_from_kernel_model(model);
  return [model](double t) {
    double h = model.h_infinity / (pi * (2.0 + t));
    for (const auto &term : model.terms)
      h += term.h * 2.0 * std::sin(term.b * t - term.phi) / (pi * (2.0 + t));
    if (model.h0 != 0.0)
      h += model.h0 * std::exp(-t) / (pi * t);
    return h;
  };
}

SectionSpectrum section_spectrum(const HankelCoefficients &coeffs, std::size_t n) {
  const auto t0 = std::chrono::steady_clock::now();
  SectionSpectrum s;
  s.n = n;
  s.source = SpectrumSource::Section;
  s.eigenvalues = linalg::eigenvalues_symmetric(hankel_matrix(coeffs, n));
  s.elapsed = seconds_since(t0);
  return s;
}

SectionSpectrum nystrom_spectrum(const std::function<double(double)> &kernel,
                                 const QuadratureGrid &grid) {
  const auto t0 = std::chrono::steady_clock::now();
  SectionSpectrum s;
  s.n = grid.size();
  s.source = SpectrumSource::Nystrom;
  s.eigenvalues = linalg::eigenvalues_symmetric(nystrom_matrix(kernel, grid));
  s.elapsed = seconds_since(t0);
  return s;
}

FillReport band_fill_metrics(const SectionSpectrum &spectrum,
                             const std::vector<predict::Band> &bands, double tol) {
  FillReport r;
  const auto &ev = spectrum.eigenvalues;
  for (const auto &b : bands) {
    const double w = b.hi - b.lo;
    const double lo = b.lo + 0.05 * w, hi = b.hi - 0.05 * w;
    double worst = 0.0;
    for (std::size_t k = 0; k < kProbesPerBand; ++k) {
      const double x =
          lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kProbesPerBand - 1);
      worst = std::max(worst, distance_to_sorted(ev, x));
    }
    r.fill_distance.push_back(worst);
  }
  const auto cover = predict::coverage(bands);
  for (double x : ev) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto &[lo, hi] : cover)
      d = std::min(d, x < lo ? lo - x : (x > hi ? x - hi : 0.0));
    if (d > tol)
      r.leak_values.push_back(x);
  }
  r.leak_count = r.leak_values.size();
  return r;
}

LeakClassification classify_leaks(const FillReport &coarse, const FillReport &fine,
                                  double stability) {
  LeakClassification out;
  std::vector<double> reference = coarse.leak_values;
  std::sort(reference.begin(), reference.end());
  for (double x : fine.leak_values) {
    const bool stable = distance_to_sorted(reference, x) <= stability;
    out.values.push_back(x);
    out.classes.push_back(stable ? LeakClass::Discrete : LeakClass::Error);
    out.all_discrete = out.all_discrete && stable;
  }
  return out;
}

bool interlacing_check(const HankelCoefficients &coeffs, std::size_t n, double slack) {
  require_coefficients(coeffs, 2 * n + 1, "interlacing_check");
  const auto small = linalg::eigenvalues_symmetric(hankel_matrix(coeffs, n));
  const auto big = linalg::eigenvalues_symmetric(hankel_matrix(coeffs, n + 1));
  for (std::size_t i = 0; i < n; ++i)
    if (small[i] < big[i] - slack || small[i] > big[i + 1] + slack)
      return false;
  return true;
}

double weight_value(const WeightSpec &weight, double angle) {
  const Complex mu = std::polar(1.0, angle);
  double q = 1.0;
  for (const auto &a : weight.locations) {
    const double r = std::abs(mu - a.value());
    if (r == 0.0)
      return 0.0;
    if (r <= std::exp(-1.0))
      q *= 1.0 / std::abs(std::log(r));
  }
  return std::pow(q, weight.beta);
}

std::vector<Complex> weight_coefficients(const WeightSpec &weight, std::size_t n) {
  const std::size_t m = kWeightSamples;
  if (n >= m / 2)
    throw ValidationError("weight matrix order too large for the sampling grid");
  std::vector<double> samples(m);
  for (std::size_t k = 0; k < m; ++k)
    samples[k] = weight_value(weight, kTwoPi * static_cast<double>(k) / static_cast<double>(m));

  std::vector<Complex> spectrum(m / 2 + 1);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), samples.data(),
                                          reinterpret_cast<fftw_complex *>(spectrum.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  std::vector<Complex> out(2 * n - 1);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex c = spectrum[k] * scale;
    out[n - 1 + k] = c;
    out[n - 1 - k] = std::conj(c);
  }
  return out;
}

std::vector<double> weighted_resolvent_probe(const HankelCoefficients &coeffs,
                                             const WeightSpec &weight,
                                             const std::vector<Complex> &zs,
                                             std::size_t n, std::size_t iterations) {
  const linalg::HouseholderTridiagonal ht(hankel_matrix(coeffs, n));
  const auto eig = linalg::tridiagonal_eigenvalues(ht.tridiagonal());
  const bool weighted = !weight.locations.empty();
  const std::vector<Complex> qc = weighted ? weight_coefficients(weight, n)
                                           : std::vector<Complex>{};

  std::vector<double> out;
  for (const Complex z : zs) {
    for (double lambda : eig)
      if (std::abs(z - lambda) <= 1e-12)
        throw SingularShift("shift within 1e-12 of an eigenvalue");

    std::vector<Complex> tmp;
    auto apply_q = [&](std::vector<Complex> &x, bool adjoint) {
      if (!weighted)
        return;
      toeplitz_apply(qc, x, tmp, adjoint);
      x.swap(tmp);
    };
    auto resolvent = [&](std::vector<Complex> &x, Complex shift) {
      ht.apply_qt(x);
      x = linalg::tridiagonal_shifted_solve(ht.tridiagonal(), shift, std::move(x));
      ht.apply_q(x);
    };
    auto forward = [&](std::vector<Complex> &x) {
      apply_q(x, false);
      resolvent(x, z);
      apply_q(x, false);
    };
    auto backward = [&](std::vector<Complex> &x) {
      apply_q(x, true);
      resolvent(x, std::conj(z));
      apply_q(x, true);
    };

    // Lanczos with full reorthogonalization on the Hermitian operator
    // A^* A, A = Q (H - z)^{-1} Q. The Krylov space contains every power
    // iterate from the same start, so the top Ritz value is at least the
    // power-iteration estimate and converges much faster on clusters.
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> gauss;
    std::vector<Complex> x(n);
    for (auto &v : x)
      v = Complex(gauss(rng), gauss(rng));
    const double nx = norm2(x);
    for (auto &v : x)
      v /= nx;
    const std::size_t steps = std::min(n, std::max<std::size_t>(iterations, 1));
    std::vector<std::vector<Complex>> basis;
    linalg::Tridiagonal krylov;
    for (std::size_t it = 0; it < steps; ++it) {
      basis.push_back(x);
      std::vector<Complex> y = x;
      forward(y);
      backward(y);
      Complex alpha = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        alpha += std::conj(x[i]) * y[i];
      krylov.diag.push_back(alpha.real());
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto &b : basis) {
          Complex c = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            c += std::conj(b[i]) * y[i];
          for (std::size_t i = 0; i < n; ++i)
            y[i] -= c * b[i];
        }
      const double beta = norm2(y);
      if (it + 1 == steps || beta <= 1e-14 * std::abs(alpha))
        break;
      krylov.off.push_back(beta);
      for (std::size_t i = 0; i < n; ++i)
        x[i] = y[i] / beta;
    }
    const auto ritz = linalg::tridiagonal_eigenvalues(krylov);
    const double sigma = std::sqrt(std::max(ritz.back(), 0.0));
    out.push_back(sigma);
  }
  return out;
}

} // namespace hankel::sections
