#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "eprb/manifest.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(EPRB_SIM_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("eprb_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("--help") == 0);
  CHECK(run("") == 1);
  CHECK(run("sweep --tau 0") == 1);
  CHECK(run("sweep --tau 0.01 --window 0.02") == 1);
  CHECK(run("sweep --mode sometimes") == 1);
  CHECK(run("chsh --settings 0,90,45") == 1);
  CHECK(run("bounds --mode continuous --window 0.5 --events 10") == 1);
  CHECK(run("chsh --tau 1e-6 --events 10") == 2);
  CHECK(run("sweep --tau 1e-6 --events 10 --alpha-grid 90") == 0);
}

TEST_CASE("sweep writes a manifest and CSV") {
  const auto dir = scratch("sweep");
  REQUIRE(run("sweep --events 20000 --tau 0.01 --alpha-grid 0,45,90 --format csv --out " + dir.string()) == 0);
  const auto manifest = eprb::parse_manifest(slurp(dir / "manifest.json"));
  CHECK(manifest.command == "sweep");
  CHECK(manifest.pairs.size() == 3);
  CHECK(manifest.config.tau == 0.01);
  CHECK(manifest.config.effective_window() == 0.01);
  const auto csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("alpha_deg,n_total,n_coincident,gamma_hat,gamma_stderr,e_conditional,e_stderr", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("config file values are overridden by flags") {
  const auto dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"tau": 0.02, "n_events": 5000, "seed": 7, "alpha_grid_deg": [30]})";
  }
  REQUIRE(run("sweep --config " + (dir / "run.json").string() + " --seed 8 --out " + dir.string()) == 0);
  const auto m = eprb::parse_manifest(slurp(dir / "manifest.json"));
  CHECK(m.config.tau == 0.02);
  CHECK(m.config.n_events == 5000);
  CHECK(m.config.seed == 8);
  CHECK(m.pairs.size() == 1);
}

TEST_CASE("chsh manifests agree across worker counts") {
  const auto a = scratch("chsh1");
  const auto b = scratch("chsh8");
  REQUIRE(run("chsh --events 100000 --tau 0.005 --workers 1 --out " + a.string()) == 0);
  REQUIRE(run("chsh --events 100000 --tau 0.005 --workers 8 --out " + b.string()) == 0);
  const auto ma = eprb::parse_manifest(slurp(a / "manifest.json"));
  const auto mb = eprb::parse_manifest(slurp(b / "manifest.json"));
  CHECK(eprb::canonical_results(ma) == eprb::canonical_results(mb));
  CHECK(ma.config.workers == 1);
  CHECK(mb.config.workers == 8);
  CHECK(slurp(a / "chsh.csv") == slurp(b / "chsh.csv"));
}

TEST_CASE("bounds audit output") {
  const auto dir = scratch("bounds");
  REQUIRE(run("bounds --events 20000 --tau 0.01 --alpha-grid 0,90 --tau-grid 0.01 --out " + dir.string()) == 0);
  const auto m = eprb::parse_manifest(slurp(dir / "manifest.json"));
  REQUIRE(m.bounds.size() == 2);
  CHECK(m.bounds[1].closed_form == doctest::Approx(0.08));
  CHECK(m.bounds[0].quadrature.has_value());
}
