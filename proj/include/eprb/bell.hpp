#pragma once

// CHSH expression and its coincidence-corrected bound 6/gamma - 4.

#include <array>

namespace eprb {

/// Conditional correlations for the setting pairs (a,c), (a,d), (b,c), (b,d)
/// together with each pair's coincidence probability.
struct CorrelationQuartet {
  double e_ac = 0.0, e_ad = 0.0, e_bc = 0.0, e_bd = 0.0;
  double gamma_ac = 1.0, gamma_ad = 1.0, gamma_bc = 1.0, gamma_bd = 1.0;
  /// Standard errors of the four correlations, in the same order. Zero when
  /// the correlations are exact.
  std::array<double, 4> e_stderr{};

  std::array<double, 4> correlations() const { return {e_ac, e_ad, e_bc, e_bd}; }
  std::array<double, 4> gammas() const { return {gamma_ac, gamma_ad, gamma_bc, gamma_bd}; }

  /// Throws std::invalid_argument unless every correlation is in [-1, 1]
  /// and every gamma in [0, 1].
  void validate() const;
};

struct InequalityReport {
  double chsh_lhs = 0.0;
  double chsh_lhs_stderr = 0.0;
  std::array<double, 4> gammas{};
  double gamma_min = 1.0;
  double modified_bound = 2.0;
  bool violates_chsh = false;
  bool violates_modified = false;
  double gamma_threshold_for_lhs = 1.0;

  friend bool operator==(const InequalityReport&, const InequalityReport&) = default;
};

double chsh_lhs(const CorrelationQuartet& q);

/// 6/gamma - 4. Throws std::domain_error for gamma <= 0.
double modified_bound(double gamma);

/// Coincidence probability above which `target_lhs` violates the corrected
/// bound: 6/(target_lhs + 4). Throws std::domain_error for target_lhs <= -4.
double gamma_threshold(double target_lhs);

/// The bound is evaluated at the smallest of the four gammas, which gives the
/// largest (most permissive) bound. Throws std::domain_error if any gamma is 0.
InequalityReport verdict(const CorrelationQuartet& q);

}  // namespace eprb
