#include "eprb/coincidence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace eprb {

bool is_coincident(double t1, double t2, const ModelParams& params) {
  if (params.coincidence_mode == CoincidenceMode::SameBin) {
    return std::floor(t1 / params.tau) == std::floor(t2 / params.tau);
  }
  return std::abs(t1 - t2) <= params.window;
}

void CoincidenceCounts::add(const EventPair& e, const ModelParams& params) {
  ++n_total;
  if (is_coincident(e.t1, e.t2, params)) {
    ++n_coincident;
    sum_xy += e.x1 * e.x2;
  }
}

CoincidenceCounts& CoincidenceCounts::operator+=(const CoincidenceCounts& other) {
  n_total += other.n_total;
  n_coincident += other.n_coincident;
  sum_xy += other.sum_xy;
  return *this;
}

CoincidenceStats make_stats(const CoincidenceCounts& counts, CoincidenceMode mode) {
  if (counts.n_total == 0) throw std::invalid_argument("no events");
  CoincidenceStats s;
  s.n_total = counts.n_total;
  s.n_coincident = counts.n_coincident;
  s.sum_xy = counts.sum_xy;
  s.mode = mode;
  const auto n = static_cast<double>(counts.n_total);
  s.gamma_hat = static_cast<double>(counts.n_coincident) / n;
  s.stderr_gamma = std::sqrt(s.gamma_hat * (1.0 - s.gamma_hat) / n);
  if (counts.n_coincident > 0) {
    const auto nc = static_cast<double>(counts.n_coincident);
    const double e = static_cast<double>(counts.sum_xy) / nc;
    s.e_conditional = e;
    s.stderr_e = std::sqrt(std::max(0.0, 1.0 - e * e) / nc);
  }
  return s;
}

CoincidenceStats accumulate(std::span<const EventPair> pairs, const ModelParams& params) {
  CoincidenceCounts counts;
  for (const auto& e : pairs) counts.add(e, params);
  return make_stats(counts, params.coincidence_mode);
}

namespace {

// Length of [u - w, u + w] intersected with [0, t2]; piecewise linear in u.
double overlap_length(double u, double w, double t2) {
  return std::max(0.0, std::min(t2, u + w) - std::max(0.0, u - w));
}

}  // namespace

double coincidence_probability_exact(double t1_max, double t2_max, double window) {
  if (t1_max < 0.0 || t2_max < 0.0 || window < 0.0) {
    throw std::invalid_argument("coincidence_probability_exact: negative argument");
  }
  if (t1_max == 0.0 && t2_max == 0.0) return 1.0;
  if (t1_max == 0.0) return std::min(1.0, window / t2_max);
  if (t2_max == 0.0) return std::min(1.0, window / t1_max);

  // Band area = integral over u1 of a piecewise-linear overlap length;
  // the trapezoid rule between its breakpoints is exact.
  std::array<double, 5> knots{0.0, window, t2_max - window, t2_max + window, t1_max};
  std::sort(knots.begin(), knots.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = std::clamp(knots[i], 0.0, t1_max);
    const double hi = std::clamp(knots[i + 1], 0.0, t1_max);
    if (hi <= lo) continue;
    area += 0.5 * (hi - lo) *
            (overlap_length(lo, window, t2_max) + overlap_length(hi, window, t2_max));
  }
  return std::clamp(area / (t1_max * t2_max), 0.0, 1.0);
}

double same_bin_probability_exact(double t1_max, double t2_max, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("same_bin_probability_exact: tau must be positive");
  if (t1_max < 0.0 || t2_max < 0.0) {
    throw std::invalid_argument("same_bin_probability_exact: negative delay");
  }
  // A zero delay pins the tag in bin 0.
  auto bin_mass = [tau](double t_max, double k) {
    if (t_max == 0.0) return k == 0.0 ? 1.0 : 0.0;
    const double lo = k * tau;
    const double hi = std::min(t_max, (k + 1.0) * tau);
    return std::max(0.0, hi - lo) / t_max;
  };
  const double shared_bins = std::floor(std::min(t1_max, t2_max) / tau) + 1.0;
  double p = 0.0;
  for (double k = 0.0; k < shared_bins; k += 1.0) p += bin_mass(t1_max, k) * bin_mass(t2_max, k);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace eprb
