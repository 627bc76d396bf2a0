#pragma once

// Upper bounds on the coincidence probability of the time-tag model when the
// window equals the tag resolution (W = tau), in closed form and by direct
// quadrature of the defining integrals. Integrals run over the full sphere
// measure sin(theta) dtheta dphi without a 1/(4 pi) normalization, matching
// the closed forms; they are bounds, compared one-sidedly against data.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eprb/coincidence.hpp"
#include "eprb/quadrature.hpp"

namespace eprb {

/// 8 tau cot(alpha/2), for settings separated by 0 < alpha <= pi.
template <typename Scalar>
Scalar unequal_settings_bound(Scalar alpha, Scalar tau) {
  if (!(alpha > Scalar(0))) {
    throw std::domain_error("unequal_settings_bound: alpha = 0, use equal_settings_bound");
  }
  if (alpha > std::numbers::pi_v<Scalar>) throw std::domain_error("unequal_settings_bound: alpha > pi");
  if (alpha == std::numbers::pi_v<Scalar>) return Scalar(0);
  return Scalar(8) * tau / std::tan(alpha / Scalar(2));
}

/// 2 tau times the integral over one full period of
/// min(sin^2 phi, sin^2(phi - alpha)) / (sin^2 phi sin^2(phi - alpha)),
/// integrated over [phi_start, phi_start + 2 pi].
template <typename Scalar>
quad::Estimate<Scalar> unequal_settings_quadrature(Scalar alpha, Scalar tau, Scalar phi_start = 0,
                                                   Scalar rel_tol = Scalar(1e-11)) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (!(alpha > Scalar(0) && alpha < pi)) {
    throw std::domain_error("unequal_settings_quadrature: integral diverges unless 0 < alpha < pi");
  }
  auto integrand = [alpha](Scalar phi) {
    const Scalar s1 = std::sin(phi);
    const Scalar s2 = std::sin(phi - alpha);
    // min(a, b) / (a b) == 1 / max(a, b), which stays finite where one factor vanishes.
    return Scalar(1) / std::max(s1 * s1, s2 * s2);
  };
  // Kinks where |sin phi| = |sin(phi - alpha)|.
  const Scalar end = phi_start + 2 * pi;
  std::vector<Scalar> breaks{phi_start, end};
  for (int k = -8; k <= 8; ++k) {
    const Scalar kink = alpha / 2 + Scalar(k) * pi / 2;
    if (kink > phi_start && kink < end) breaks.push_back(kink);
  }
  std::sort(breaks.begin(), breaks.end());
  auto est = quad::integrate<Scalar>(integrand, breaks, {rel_tol, Scalar(0), 30});
  return {Scalar(2) * tau * est.value, Scalar(2) * tau * est.error};
}

/// 4 pi (tau^(2/3) sqrt(1 - tau^(2/3)) + tau^(2/3) / (1 + sqrt(1 - tau^(2/3)))).
template <typename Scalar>
Scalar equal_settings_bound(Scalar tau) {
  if (!(tau > Scalar(0) && tau <= Scalar(1))) {
    throw std::domain_error("equal_settings_bound: tau must lie in (0, 1]");
  }
  const Scalar u = std::cbrt(tau * tau);
  const Scalar root = std::sqrt(Scalar(1) - u);
  return Scalar(4) * std::numbers::pi_v<Scalar> * (u * root + u / (Scalar(1) + root));
}

/// Double integral over the sphere of
/// min(tau / (1 - cos^2 phi sin^2 theta)^(3/2), 1) sin theta.
template <typename Scalar>
quad::Estimate<Scalar> equal_settings_quadrature(Scalar tau, Scalar rel_tol = Scalar(1e-10)) {
  if (!(tau > Scalar(0) && tau <= Scalar(1))) {
    throw std::domain_error("equal_settings_quadrature: tau must lie in (0, 1]");
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  // Saturation where 1 - cos^2 phi sin^2 theta <= tau^(2/3).
  const Scalar u = std::cbrt(tau * tau);

  auto inner = [&](Scalar phi) {
    const Scalar c = std::cos(phi);
    const Scalar c2 = c * c;
    auto f = [&](Scalar theta) {
      const Scalar st = std::sin(theta);
      const Scalar base = Scalar(1) - c2 * st * st;
      if (base <= u) return st;
      return std::min(tau / (base * std::sqrt(base)), Scalar(1)) * st;
    };
    std::vector<Scalar> breaks{Scalar(0), pi / 2, pi};
    if (c2 > Scalar(1) - u) {
      const Scalar edge = std::asin(std::min(Scalar(1), std::sqrt((Scalar(1) - u) / c2)));
      breaks = {Scalar(0), edge, pi / 2, pi - edge, pi};
      std::sort(breaks.begin(), breaks.end());
    }
    return quad::integrate<Scalar>(f, breaks, {rel_tol / 10, Scalar(0), 30}).value;
  };

  const Scalar phi_edge = std::acos(std::min(Scalar(1), std::sqrt(Scalar(1) - u)));
  std::vector<Scalar> breaks{Scalar(0),       phi_edge,          pi / 2,
                             pi - phi_edge,   pi,                pi + phi_edge,
                             3 * pi / 2,      2 * pi - phi_edge, 2 * pi};
  std::sort(breaks.begin(), breaks.end());
  return quad::integrate<Scalar>(inner, breaks, {rel_tol, Scalar(0), 30});
}

/// 6 pi tau^(2/3), the small-tau form of equal_settings_bound.
template <typename Scalar>
Scalar approx_equal_settings(Scalar tau) {
  return Scalar(6) * std::numbers::pi_v<Scalar> * std::cbrt(tau * tau);
}

struct BoundReport {
  double alpha = 0.0;
  double tau = 0.0;
  double closed_form = 0.0;
  /// Empty where the quadrature integral diverges (alpha = pi).
  std::optional<double> quadrature;
  std::optional<double> quadrature_error;
  std::optional<double> simulated_gamma;
  std::optional<double> gamma_stderr;
  bool satisfied = true;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Closed form and quadrature of the bound that applies at this angle,
/// without a simulated value.
BoundReport evaluate_bound(double alpha, double tau);

/// Compares gamma_hat + 4 stderr with the bound for the given angle (radians,
/// unsigned). Throws std::invalid_argument unless the stats come from a
/// same-bin run.
BoundReport check_simulated_gamma(const CoincidenceStats& stats, double alpha, double tau);

inline constexpr double kBoundSigmas = 4.0;

}  // namespace eprb
