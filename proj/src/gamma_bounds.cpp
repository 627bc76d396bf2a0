#include "eprb/gamma_bounds.hpp"

#include <numbers>

namespace eprb {

BoundReport evaluate_bound(double alpha, double tau) {
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi)) {
    throw std::domain_error("evaluate_bound: alpha must lie in [0, pi]");
  }
  BoundReport r;
  r.alpha = alpha;
  r.tau = tau;
  if (alpha == 0.0) {
    r.closed_form = equal_settings_bound(tau);
    const auto q = equal_settings_quadrature(tau);
    r.quadrature = q.value;
    r.quadrature_error = q.error;
  } else {
    r.closed_form = unequal_settings_bound(alpha, tau);
    if (alpha < std::numbers::pi) {
      const auto q = unequal_settings_quadrature(alpha, tau);
      r.quadrature = q.value;
      r.quadrature_error = q.error;
    }
  }
  return r;
}

BoundReport check_simulated_gamma(const CoincidenceStats& stats, double alpha, double tau) {
  if (stats.mode != CoincidenceMode::SameBin) {
    throw std::invalid_argument(
        "check_simulated_gamma: bounds assume same-bin tagging with window = tau");
  }
  BoundReport r = evaluate_bound(alpha, tau);
  r.simulated_gamma = stats.gamma_hat;
  r.gamma_stderr = stats.stderr_gamma;
  r.satisfied = stats.gamma_hat + kBoundSigmas * stats.stderr_gamma <= r.closed_form;
  return r;
}

}  // namespace eprb
