#include "hankel_spectra/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/legendre.hpp"
#include "hankel_spectra/models.hpp"
#include "hankel_spectra/quadrature.hpp"
#include "hankel_spectra/sections.hpp"
#include "hankel_spectra/symbols.hpp"

namespace hankel::checks {

namespace {
using std::numbers::pi;
constexpr double kPhis[] = {0.0, 0.4, 1.2};
} // namespace

double mehler_grid_residual() {
  double worst = 0.0;
  for (double tau : {0.5, 1.0, 2.0})
    for (double t : {0.0, 1.0, 5.0})
      worst = std::max(worst, models::mehler_identity_residual(tau, t));
  return worst;
}

double zeta_limit_residual() {
  return std::max(std::abs(models::zeta(1e-4) - 0.5),
                  std::abs(models::zeta(-1e-4) + 0.5));
}

double zeta_odd_residual() {
  double worst = 0.0;
  for (double nu : {0.3, 2.0, 17.0})
    worst = std::max(worst, std::abs(models::zeta(-nu) + models::zeta(nu)));
  return worst;
}

double zeta_route_residual() {
  double worst = 0.0;
  const int count = 120;
  for (int k = 0; k < count; ++k) {
    const double nu = 0.1 * std::pow(500.0, k / double(count - 1));
    worst = std::max(worst, std::abs(models::zeta(nu) - models::zeta_laplace(nu)));
  }
  return worst;
}

double omega_plus_coefficient_residual() {
  symbols::FourierOptions opt;
  opt.mode = symbols::FourierMode::Quadrature;
  const auto spec = symbols::make_preset_symbol(models::ModelPreset::omega_plus());
  const auto h = symbols::fourier_coefficients(spec, 65, opt);
  double worst = 0.0;
  for (std::size_t n = 0; n < h.size(); ++n)
    worst = std::max(worst, std::abs(h[n] - 1.0 / (pi * double(n + 1))));
  return worst;
}

double psi0_residual() {
  double worst = 0.0;
  for (double nu : {0.5, 2.0, 10.0}) {
    const Complex closed{0.0, 2.0 / pi * std::atan(nu)};
    worst = std::max(worst, std::abs(models::psi0_quadrature(nu) - closed));
    worst = std::max(worst, std::abs(models::psi0(nu) - closed));
  }
  return worst;
}

double mixing_orthogonality_residual() {
  double worst = 0.0;
  for (double phi : kPhis) {
    const auto y = models::mixing_matrix(phi).y;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double g = y[0][i] * y[0][j] + y[1][i] * y[1][j];
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
  }
  return worst;
}

double sigma_residual() {
  double worst = 0.0;
  for (double phi : kPhis) {
    const auto dec = models::sigma_decomposition(phi);
    const auto sign = models::mixing_conjugate_sign(dec.mixing);
    const auto omega = [phi](double a) { return models::omega_phi(phi, a); };
    const auto full = models::block_symbol(omega);
    for (int k = 0; k < 24; ++k) {
      const double angle = 0.13 + kTwoPi * k / 24.0;
      const Complex v = models::v_symbol(angle, -1);
      const auto s0 = dec.singular(angle);
      const auto s1 = dec.lipschitz(angle);
      const auto s = full(angle);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          worst = std::max(worst, std::abs(s0[i][j] - v * sign[i][j]));
          worst = std::max(worst, std::abs(s0[i][j] + s1[i][j] - s[i][j]));
        }
    }
  }
  return worst;
}

double interleave_residual(unsigned seed, std::size_t n) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values(2 * n);
  for (auto &v : values)
    v = u(rng);
  return sections::block_hankel_interleave_check(
      sections::user_coefficients(values, "random"), n);
}

double legendre_asymptotic_residual() {
  const double p = models::legendre_conical(1.0, 100.0);
  const double a = models::legendre_conical_asymptotic(1.0, 100.0);
  return std::abs(p - a) / std::abs(p);
}

double parseval_residual() {
  // f(t) = t^2 e^{-t}: ||f||^2 = 3/4 exactly; its transform decays fast in tau.
  auto f = [](double t) { return t * t * std::exp(-t); };
  const auto rule = quad::gauss_legendre(20);
  std::vector<double> tau, w;
  for (int p = 0; p < 12; ++p)
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      tau.push_back(p + 0.5 * (rule.nodes[i] + 1.0));
      w.push_back(0.5 * rule.weights[i]);
    }
  const auto psi = models::mehler_fock_transform(f, 40.0, tau);
  double s = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i)
    s += w[i] * psi[i] * psi[i];
  return std::abs(std::sqrt(s / 0.75) - 1.0);
}

const std::vector<IdentityCheck> &identity_checks() {
  static const std::vector<IdentityCheck> all = {
      {"mehler", "Mehler formula, tau in {0.5,1,2} x t in {0,1,5}", mehler_grid_residual},
      {"zeta_limits", "zeta(+-1e-4) against +-1/2", zeta_limit_residual},
      {"zeta_odd", "zeta(-nu) + zeta(nu), nu in {0.3,2,17}", zeta_odd_residual},
      {"zeta_routes", "Si/Ci form against Laplace form on [0.1,50]", zeta_route_residual},
      {"omega_plus", "Fourier coefficients of omega_+ against 1/(pi(n+1)), n<=64",
       omega_plus_coefficient_residual},
      {"psi0", "psi_0 quadrature against (2i/pi) arctan, nu in {0.5,2,10}", psi0_residual},
      {"mixing", "Y^T Y - I, phi in {0,0.4,1.2}", mixing_orthogonality_residual},
      {"sigma", "Sigma^0 = v Y^T diag(1,-1) Y and Sigma^0 + tilde Sigma = Sigma",
       sigma_residual},
      {"interleave", "even/odd block-Hankel identity, random coefficients, N=16",
       [] { return interleave_residual(); }},
      {"legendre_asymptotic", "P_{-1/2+i}(100) against its leading asymptotics",
       legendre_asymptotic_residual},
      {"parseval", "Mehler-Fock Parseval for t^2 e^{-t}", parseval_residual},
  };
  return all;
}

std::vector<CheckResult> run_identity_checks(
    const std::function<double(const std::string &)> &tolerance,
    const std::optional<std::string> &only) {
  const auto &all = identity_checks();
  if (only && std::none_of(all.begin(), all.end(),
                           [&](const IdentityCheck &c) { return c.id == *only; }))
    throw ValidationError("unknown check id '" + *only + "'");
  std::vector<CheckResult> out;
  for (const auto &c : all) {
    if (only && c.id != *only)
      continue;
    CheckResult r;
    r.id = c.id;
    r.note = c.description;
    r.tolerance = tolerance(c.id);
    try {
      r.value = c.residual();
      r.pass = std::isfinite(r.value) && r.value < r.tolerance;
    } catch (const std::exception &e) {
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.pass = false;
      r.note += std::string(" [error: ") + e.what() + "]";
    }
    out.push_back(r);
  }
  return out;
}

} // namespace hankel::checks
