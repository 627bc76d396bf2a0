#pragma once

// Seeded, parallel experiment drivers: correlation sweeps, the four-setting
// CHSH experiment and the coincidence-bound audit.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eprb/bell.hpp"
#include "eprb/coincidence.hpp"
#include "eprb/gamma_bounds.hpp"
#include "eprb/model.hpp"

namespace eprb {

/// Invalid configuration (CLI exit code 1).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A setting pair produced no coincidences where a correlation is required
/// (CLI exit code 2).
class EmptyEnsembleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  /// CHSH settings a, b, c, d as azimuths in the x-y plane, degrees.
  std::array<double, 4> settings_deg{0.0, 90.0, 45.0, 135.0};
  std::vector<double> alpha_grid_deg{0,  15,  30,  45,  60,  75,  90,
                                     105, 120, 135, 150, 165, 180};
  /// Resolutions visited by the bound audit.
  std::vector<double> tau_grid{1e-2, 1e-3};
  double tau = 0.00025;
  /// Coincidence window; unset means "equal to tau".
  std::optional<double> window;
  double d_exponent = 3.0;
  CoincidenceMode coincidence_mode = CoincidenceMode::SameBin;
  std::uint64_t n_events = 10'000'000;
  std::uint64_t seed = 1;
  /// Worker threads; 0 selects the hardware concurrency. Never affects results.
  unsigned workers = 0;

  double effective_window() const { return window.value_or(tau); }
  ModelParams model_params() const;
  /// Throws ConfigError.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Unsigned angle between two in-plane settings given in degrees, folded
/// into [0, 180].
double separation_deg(double a1_deg, double a2_deg);

/// Raw counts for `n_events` events at one setting pair. The random stream of
/// event i is keyed by (seed, a1_deg, a2_deg) and indexed by i; the result is
/// independent of `workers`.
CoincidenceCounts simulate_counts(std::uint64_t seed, std::uint64_t n_events, double a1_deg,
                                  double a2_deg, const ModelParams& params, unsigned workers);

CoincidenceStats simulate_stats(const ExperimentConfig& config, double a1_deg, double a2_deg);

struct SweepRow {
  double alpha_deg = 0.0;
  CoincidenceStats stats;
  /// -cos(alpha), the singlet correlation.
  double singlet_reference = 0.0;
  /// -(1 - 2 alpha / pi), the correlation without post-selection.
  double triangle_reference = 0.0;
  /// Set when no event survived the window; the run continues.
  bool flagged = false;
};

/// Station 1 at 0 degrees, station 2 at each grid angle.
std::vector<SweepRow> run_correlation_sweep(const ExperimentConfig& config);

struct PairRecord {
  std::string label;
  double a1_deg = 0.0;
  double a2_deg = 0.0;
  CoincidenceStats stats;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct RunManifest {
  std::string command;
  ExperimentConfig config;
  std::string version;
  std::string timestamp;
  double wall_seconds = 0.0;
  std::vector<PairRecord> pairs;
  std::optional<InequalityReport> inequality;
  std::vector<BoundReport> bounds;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// Manifest skeleton stamped with version and current time.
RunManifest make_manifest(std::string command, const ExperimentConfig& config);

struct ChshOutcome {
  InequalityReport report;
  RunManifest manifest;
};

/// Throws EmptyEnsembleError naming the pair if any pair has no coincidences.
ChshOutcome run_chsh_experiment(const ExperimentConfig& config);

/// Simulates each (alpha, tau) of alpha_grid_deg x tau_grid with same-bin
/// tagging and window = tau, then checks gamma against the applicable bound.
/// Throws ConfigError for continuous-mode configurations.
std::vector<BoundReport> run_bound_audit(const ExperimentConfig& config);

std::string artifact_version();

}  // namespace eprb
