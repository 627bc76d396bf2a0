#pragma once

// Time-window post-selection and the statistics accumulated over it.

#include <cstdint>
#include <optional>
#include <span>

#include "eprb/model.hpp"

namespace eprb {

bool is_coincident(double t1, double t2, const ModelParams& params);

/// Integer tallies of a run. Merging is associative and commutative, so
/// partial tallies from any partition of the events give identical totals.
struct CoincidenceCounts {
  std::uint64_t n_total = 0;
  std::uint64_t n_coincident = 0;
  std::int64_t sum_xy = 0;

  void add(const EventPair& e, const ModelParams& params);
  CoincidenceCounts& operator+=(const CoincidenceCounts& other);
  friend bool operator==(const CoincidenceCounts&, const CoincidenceCounts&) = default;
};

struct CoincidenceStats {
  std::uint64_t n_total = 0;
  std::uint64_t n_coincident = 0;
  std::int64_t sum_xy = 0;
  double gamma_hat = 0.0;
  /// Empty when no event survived the window.
  std::optional<double> e_conditional;
  double stderr_gamma = 0.0;
  std::optional<double> stderr_e;
  CoincidenceMode mode = CoincidenceMode::SameBin;

  bool has_correlation() const { return e_conditional.has_value(); }
  friend bool operator==(const CoincidenceStats&, const CoincidenceStats&) = default;
};

/// Derives estimates and standard errors from raw counts. Throws
/// std::invalid_argument on an empty run.
CoincidenceStats make_stats(const CoincidenceCounts& counts, CoincidenceMode mode);

CoincidenceStats accumulate(std::span<const EventPair> pairs, const ModelParams& params);

/// Exact P(|u1 - u2| <= window) for independent u1 ~ U[0,T1], u2 ~ U[0,T2].
double coincidence_probability_exact(double t1_max, double t2_max, double window);

/// Exact probability that the two tags share a resolution bin of width tau.
double same_bin_probability_exact(double t1_max, double t2_max, double tau);

}  // namespace eprb
