#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hankel::checks {

struct CheckResult {
  std::string id;
  double value = 0.0;     // residual or measured quantity
  double tolerance = 0.0; // pass iff value < tolerance (or <= for ceilings)
  bool pass = false;
  std::string note;
};

struct IdentityCheck {
  std::string id;
  std::string description;
  std::function<double()> residual;
};

/// Model-identity suite: mehler, zeta_limits, zeta_odd, zeta_routes,
/// omega_plus, psi0, mixing, sigma, interleave, legendre_asymptotic, parseval.
const std::vector<IdentityCheck> &identity_checks();

/// Runs the suite (or the single check `only`) against `tolerance(id)`.
/// Throws ValidationError for an unknown `only` id.
std::vector<CheckResult> run_identity_checks(
    const std::function<double(const std::string &)> &tolerance,
    const std::optional<std::string> &only = std::nullopt);

// Individual residuals, shared with the acceptance suite.
double mehler_grid_residual();
double zeta_limit_residual();
double zeta_odd_residual();
double zeta_route_residual();
double omega_plus_coefficient_residual();
double psi0_residual();
double mixing_orthogonality_residual();
double sigma_residual();
double interleave_residual(unsigned seed = 7, std::size_t n = 16);
double legendre_asymptotic_residual();
double parseval_residual();

} // namespace hankel::checks
