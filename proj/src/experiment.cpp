#include "eprb/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <thread>

#ifndef EPRB_VERSION
#define EPRB_VERSION "0.0.0"
#endif

namespace eprb {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stream key for one setting pair; events at the same pair and seed replay
// identically whichever command or grid produced them.
std::uint64_t pair_key(std::uint64_t seed, double a1_deg, double a2_deg) {
  std::uint64_t k = splitmix64(seed);
  k = splitmix64(k ^ std::bit_cast<std::uint64_t>(a1_deg + 0.0));
  k = splitmix64(k ^ std::bit_cast<std::uint64_t>(a2_deg + 0.0));
  return k;
}

double separation_rad(double a1_deg, double a2_deg) {
  const double d = separation_deg(a1_deg, a2_deg);
  return d == 180.0 ? std::numbers::pi : d * kDegree;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string artifact_version() { return EPRB_VERSION; }

ModelParams ExperimentConfig::model_params() const {
  ModelParams p;
  p.tau = tau;
  p.window = effective_window();
  p.d_exponent = d_exponent;
  p.coincidence_mode = coincidence_mode;
  return p;
}

void ExperimentConfig::validate() const {
  if (n_events < 1) throw ConfigError("n_events must be at least 1");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
  const double w = effective_window();
  if (!(w > 0.0 && w <= 1.0)) throw ConfigError("window must lie in (0, 1]");
  if (!(d_exponent > 0.0) || !std::isfinite(d_exponent)) {
    throw ConfigError("d_exponent must be positive");
  }
  for (double a : settings_deg) {
    if (!std::isfinite(a)) throw ConfigError("settings must be finite");
  }
  for (double a : alpha_grid_deg) {
    if (!std::isfinite(a)) throw ConfigError("alpha grid angles must be finite");
  }
  for (double t : tau_grid) {
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("tau grid values must lie in (0, 1]");
  }
  // Same-bin tagging has no separate window: coincidence is sharing a bin.
  if (coincidence_mode == CoincidenceMode::SameBin && w != tau) {
    throw ConfigError("same-bin mode requires window == tau");
  }
}

double separation_deg(double a1_deg, double a2_deg) {
  double d = std::fmod(std::abs(a2_deg - a1_deg), 360.0);
  if (d > 180.0) d = 360.0 - d;
  return d;
}

CoincidenceCounts simulate_counts(std::uint64_t seed, std::uint64_t n_events, double a1_deg,
                                  double a2_deg, const ModelParams& params, unsigned workers) {
  params.validate();
  const UnitVector3 a1 = UnitVector3::in_plane(a1_deg * kDegree);
  const UnitVector3 a2 = UnitVector3::in_plane(a2_deg * kDegree);
  const std::uint64_t key = pair_key(seed, a1_deg, a2_deg);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    CoincidenceCounts c;
    for (std::uint64_t i = begin; i < end; ++i) c.add(generate_event(key, i, a1, a2, params), params);
    return c;
  };

  const std::uint64_t n_workers =
      std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(n_events, 1));
  if (n_workers <= 1) return run_range(0, n_events);

  std::vector<CoincidenceCounts> partial(n_workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(n_workers);
    for (std::uint64_t w = 0; w < n_workers; ++w) {
      const std::uint64_t begin = n_events * w / n_workers;
      const std::uint64_t end = n_events * (w + 1) / n_workers;
      threads.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
    }
  }
  CoincidenceCounts total;
  for (const auto& p : partial) total += p;
  return total;
}

CoincidenceStats simulate_stats(const ExperimentConfig& config, double a1_deg, double a2_deg) {
  const ModelParams params = config.model_params();
  const auto counts =
      simulate_counts(config.seed, config.n_events, a1_deg, a2_deg, params, config.workers);
  return make_stats(counts, params.coincidence_mode);
}

std::vector<SweepRow> run_correlation_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  rows.reserve(config.alpha_grid_deg.size());
  for (double alpha_deg : config.alpha_grid_deg) {
    SweepRow row;
    row.alpha_deg = alpha_deg;
    row.stats = simulate_stats(config, 0.0, alpha_deg);
    const double alpha = separation_rad(0.0, alpha_deg);
    row.singlet_reference = -std::cos(alpha);
    row.triangle_reference = -(1.0 - 2.0 * alpha / std::numbers::pi);
    row.flagged = !row.stats.has_correlation();
    rows.push_back(row);
  }
  return rows;
}

RunManifest make_manifest(std::string command, const ExperimentConfig& config) {
  RunManifest m;
  m.command = std::move(command);
  m.config = config;
  m.config.window = config.effective_window();
  m.version = artifact_version();
  m.timestamp = utc_timestamp();
  return m;
}

ChshOutcome run_chsh_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto& s = config.settings_deg;
  // (a,c), (a,d), (b,c), (b,d)
  const std::array<std::pair<int, int>, 4> combos{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
  const std::array<const char*, 4> labels{"ac", "ad", "bc", "bd"};

  ChshOutcome out;
  out.manifest = make_manifest("chsh", config);
  CorrelationQuartet q;
  std::array<double, 4> e{};
  std::array<double, 4> g{};
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const double a1 = s[combos[i].first];
    const double a2 = s[combos[i].second];
    const CoincidenceStats stats = simulate_stats(config, a1, a2);
    if (!stats.has_correlation()) {
      throw EmptyEnsembleError("no coincidences for setting pair " + std::string(labels[i]) + " (" +
                               std::to_string(a1) + ", " + std::to_string(a2) + " deg)");
    }
    e[i] = *stats.e_conditional;
    g[i] = stats.gamma_hat;
    q.e_stderr[i] = stats.stderr_e.value_or(0.0);
    out.manifest.pairs.push_back({labels[i], a1, a2, stats});
  }
  q.e_ac = e[0];
  q.e_ad = e[1];
  q.e_bc = e[2];
  q.e_bd = e[3];
  q.gamma_ac = g[0];
  q.gamma_ad = g[1];
  q.gamma_bc = g[2];
  q.gamma_bd = g[3];
  out.report = verdict(q);
  out.manifest.inequality = out.report;
  out.manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<BoundReport> run_bound_audit(const ExperimentConfig& config) {
  config.validate();
  if (config.coincidence_mode != CoincidenceMode::SameBin) {
    throw ConfigError("bound audit requires same-bin tagging with window = tau");
  }
  std::vector<BoundReport> reports;
  for (double tau : config.tau_grid) {
    ExperimentConfig c = config;
    c.tau = tau;
    c.window = tau;
    for (double alpha_deg : config.alpha_grid_deg) {
      const CoincidenceStats stats = simulate_stats(c, 0.0, alpha_deg);
      reports.push_back(
          check_simulated_gamma(stats, separation_rad(0.0, alpha_deg), tau));
    }
  }
  return reports;
}

}  // namespace eprb
