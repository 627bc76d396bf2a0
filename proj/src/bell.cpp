#include "eprb/bell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eprb {

void CorrelationQuartet::validate() const {
  for (double e : correlations()) {
    if (!(e >= -1.0 && e <= 1.0)) throw std::invalid_argument("correlation outside [-1, 1]");
  }
  for (double g : gammas()) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("coincidence probability outside [0, 1]");
  }
}

double chsh_lhs(const CorrelationQuartet& q) {
  return std::abs(q.e_ac - q.e_ad + q.e_bc + q.e_bd);
}

double modified_bound(double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("undefined bound: gamma must be positive");
  return 6.0 / gamma - 4.0;
}

double gamma_threshold(double target_lhs) {
  if (!(target_lhs > -4.0)) throw std::domain_error("gamma_threshold: target must exceed -4");
  return 6.0 / (target_lhs + 4.0);
}

InequalityReport verdict(const CorrelationQuartet& q) {
  q.validate();
  InequalityReport r;
  r.gammas = q.gammas();
  r.gamma_min = *std::min_element(r.gammas.begin(), r.gammas.end());
  if (r.gamma_min <= 0.0) throw std::domain_error("empty post-selected ensemble");

  r.chsh_lhs = chsh_lhs(q);
  double var = 0.0;
  for (double s : q.e_stderr) var += s * s;
  r.chsh_lhs_stderr = std::sqrt(var);

  r.modified_bound = modified_bound(r.gamma_min);
  r.violates_chsh = r.chsh_lhs > 2.0;
  r.violates_modified = r.chsh_lhs > r.modified_bound;
  r.gamma_threshold_for_lhs = gamma_threshold(r.chsh_lhs);
  return r;
}

}  // namespace eprb
