// eprb-sim: command-line driver for the time-tagged EPR-Bohm simulator.
//
//   eprb-sim sweep            correlation versus setting angle
//   eprb-sim chsh             four-setting CHSH experiment
//   eprb-sim bounds           coincidence-probability bound audit
//   eprb-sim reproduce-paper  all of the above with pass/fail summary
//
// Exit codes: 0 success, 1 invalid configuration, 2 empty post-selected
// ensemble, 3 reproduction check failed.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eprb/experiment.hpp"
#include "eprb/manifest.hpp"
#include "eprb/report.hpp"
#include "eprb/reproduce.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitEmpty = 2;
constexpr int kExitCheckFailed = 3;

struct Flags {
  std::string config_path;
  std::optional<double> tau;
  std::optional<double> window;
  std::optional<std::string> mode;
  std::optional<double> d_exponent;
  std::optional<std::uint64_t> events;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::vector<double> alpha_grid;
  std::vector<double> tau_grid;
  std::vector<double> settings;
  std::string out_dir;
  std::string format = "table";
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  cmd->add_option("--tau", f.tau, "Time-tag resolution in units of the maximal delay");
  cmd->add_option("--window", f.window, "Coincidence window W (defaults to tau)");
  cmd->add_option("--mode", f.mode, "Coincidence rule")
      ->check(CLI::IsMember({"same-bin", "continuous"}));
  cmd->add_option("--d-exponent", f.d_exponent, "Delay exponent d");
  cmd->add_option("--events", f.events, "Events per setting pair");
  cmd->add_option("--seed", f.seed, "64-bit seed");
  cmd->add_option("--workers", f.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--alpha-grid", f.alpha_grid, "Comma-separated angles in degrees")->delimiter(',');
  cmd->add_option("--tau-grid", f.tau_grid, "Comma-separated resolutions for the bound audit")
      ->delimiter(',');
  cmd->add_option("--settings", f.settings, "CHSH settings a,b,c,d in degrees")
      ->delimiter(',')
      ->expected(4);
  cmd->add_option("--out", f.out_dir, "Directory for manifest.json and CSV results");
  cmd->add_option("--format", f.format, "Standard output format")
      ->check(CLI::IsMember({"csv", "table"}));
}

eprb::ExperimentConfig build_config(const Flags& f) {
  eprb::ExperimentConfig c = f.config_path.empty() ? eprb::ExperimentConfig{}
                                                   : eprb::load_config(f.config_path);
  if (f.tau) c.tau = *f.tau;
  if (f.window) c.window = *f.window;
  if (f.mode) c.coincidence_mode = eprb::parse_mode(*f.mode);
  if (f.d_exponent) c.d_exponent = *f.d_exponent;
  if (f.events) c.n_events = *f.events;
  if (f.seed) c.seed = *f.seed;
  if (f.workers) c.workers = *f.workers;
  if (!f.alpha_grid.empty()) c.alpha_grid_deg = f.alpha_grid;
  if (!f.tau_grid.empty()) c.tau_grid = f.tau_grid;
  if (!f.settings.empty()) {
    if (f.settings.size() != 4) throw eprb::ConfigError("--settings needs exactly four angles");
    std::copy(f.settings.begin(), f.settings.end(), c.settings_deg.begin());
  }
  c.validate();
  return c;
}

eprb::OutputFormat output_format(const Flags& f) {
  return f.format == "csv" ? eprb::OutputFormat::Csv : eprb::OutputFormat::Table;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

template <typename WriteCsv>
void persist(const Flags& f, const eprb::RunManifest& manifest, const std::string& csv_name,
             WriteCsv&& write_csv) {
  if (f.out_dir.empty()) return;
  const std::filesystem::path dir(f.out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "manifest.json", eprb::serialize(manifest));
  std::ofstream csv(dir / csv_name);
  write_csv(csv);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int run_sweep(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  const auto config = build_config(f);
  const auto rows = eprb::run_correlation_sweep(config);
  eprb::write_sweep(std::cout, rows, output_format(f));

  auto manifest = eprb::make_manifest("sweep", config);
  for (const auto& r : rows) {
    manifest.pairs.push_back({"alpha=" + eprb::format_number(r.alpha_deg), 0.0, r.alpha_deg, r.stats});
  }
  manifest.wall_seconds = seconds_since(start);
  persist(f, manifest, "sweep.csv",
          [&](std::ostream& out) { eprb::write_sweep(out, rows, eprb::OutputFormat::Csv); });
  return kExitOk;
}

int run_chsh(const Flags& f) {
  const auto config = build_config(f);
  const auto outcome = eprb::run_chsh_experiment(config);
  eprb::write_pairs(std::cout, outcome.manifest.pairs, output_format(f));
  std::cout << '\n';
  eprb::write_inequality(std::cout, outcome.report, output_format(f));
  persist(f, outcome.manifest, "chsh.csv", [&](std::ostream& out) {
    eprb::write_pairs(out, outcome.manifest.pairs, eprb::OutputFormat::Csv);
  });
  return kExitOk;
}

int run_bounds(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  const auto config = build_config(f);
  const auto reports = eprb::run_bound_audit(config);
  eprb::write_bounds(std::cout, reports, output_format(f));

  auto manifest = eprb::make_manifest("bounds", config);
  manifest.bounds = reports;
  manifest.wall_seconds = seconds_since(start);
  persist(f, manifest, "bounds.csv",
          [&](std::ostream& out) { eprb::write_bounds(out, reports, eprb::OutputFormat::Csv); });
  return kExitOk;
}

int run_reproduce(const Flags& f) {
  const auto config = build_config(f);
  const auto results = eprb::run_reference_checks(config, &std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  std::cout << (all ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << '\n';
  if (!f.out_dir.empty()) {
    std::filesystem::create_directories(f.out_dir);
    std::ofstream csv(std::filesystem::path(f.out_dir) / "reproduce.csv");
    csv << "id,check,passed,detail\n";
    for (const auto& r : results) {
      csv << r.id << ",\"" << r.name << "\"," << (r.passed ? "true" : "false") << ",\"" << r.detail
          << "\"\n";
    }
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-based EPR-Bohm simulator with coincidence-time post-selection"};
  app.require_subcommand(1);

  Flags flags;
  auto* sweep = app.add_subcommand("sweep", "Conditional correlation versus setting angle");
  auto* chsh = app.add_subcommand("chsh", "Four-setting CHSH experiment and verdicts");
  auto* bounds = app.add_subcommand("bounds", "Audit simulated coincidence rates against bounds");
  auto* reproduce = app.add_subcommand("reproduce-paper", "Run every reference check");
  for (auto* cmd : {sweep, chsh, bounds, reproduce}) add_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sweep) return run_sweep(flags);
    if (*chsh) return run_chsh(flags);
    if (*bounds) return run_bounds(flags);
    return run_reproduce(flags);
  } catch (const eprb::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const eprb::EmptyEnsembleError& e) {
    std::cerr << "empty post-selected ensemble: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
