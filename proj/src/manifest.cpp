#include "eprb/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eprb {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json config_json(const ExperimentConfig& c) {
  return json{{"settings_deg", c.settings_deg},
              {"alpha_grid_deg", c.alpha_grid_deg},
              {"tau_grid", c.tau_grid},
              {"tau", c.tau},
              {"window", c.effective_window()},
              {"d_exponent", c.d_exponent},
              {"coincidence_mode", std::string(to_string(c.coincidence_mode))},
              {"n_events", c.n_events},
              {"seed", c.seed}};
}

json stats_json(const CoincidenceStats& s) {
  return json{{"n_total", s.n_total},
              {"n_coincident", s.n_coincident},
              {"sum_xy", s.sum_xy},
              {"gamma_hat", s.gamma_hat},
              {"stderr_gamma", s.stderr_gamma},
              {"e_conditional", optional_json(s.e_conditional)},
              {"stderr_e", optional_json(s.stderr_e)},
              {"mode", std::string(to_string(s.mode))}};
}

CoincidenceStats stats_from(const json& j) {
  CoincidenceStats s;
  s.n_total = j.at("n_total").get<std::uint64_t>();
  s.n_coincident = j.at("n_coincident").get<std::uint64_t>();
  s.sum_xy = j.at("sum_xy").get<std::int64_t>();
  s.gamma_hat = j.at("gamma_hat").get<double>();
  s.stderr_gamma = j.at("stderr_gamma").get<double>();
  s.e_conditional = optional_from<double>(j, "e_conditional");
  s.stderr_e = optional_from<double>(j, "stderr_e");
  s.mode = parse_mode(j.at("mode").get<std::string>());
  return s;
}

json inequality_json(const InequalityReport& r) {
  return json{{"chsh_lhs", r.chsh_lhs},
              {"chsh_lhs_stderr", r.chsh_lhs_stderr},
              {"gammas", r.gammas},
              {"gamma_min", r.gamma_min},
              {"modified_bound", r.modified_bound},
              {"violates_chsh", r.violates_chsh},
              {"violates_modified", r.violates_modified},
              {"gamma_threshold_for_lhs", r.gamma_threshold_for_lhs}};
}

InequalityReport inequality_from(const json& j) {
  InequalityReport r;
  r.chsh_lhs = j.at("chsh_lhs").get<double>();
  r.chsh_lhs_stderr = j.at("chsh_lhs_stderr").get<double>();
  r.gammas = j.at("gammas").get<std::array<double, 4>>();
  r.gamma_min = j.at("gamma_min").get<double>();
  r.modified_bound = j.at("modified_bound").get<double>();
  r.violates_chsh = j.at("violates_chsh").get<bool>();
  r.violates_modified = j.at("violates_modified").get<bool>();
  r.gamma_threshold_for_lhs = j.at("gamma_threshold_for_lhs").get<double>();
  return r;
}

json bound_json(const BoundReport& b) {
  return json{{"alpha", b.alpha},
              {"tau", b.tau},
              {"closed_form", b.closed_form},
              {"quadrature", optional_json(b.quadrature)},
              {"quadrature_error", optional_json(b.quadrature_error)},
              {"simulated_gamma", optional_json(b.simulated_gamma)},
              {"gamma_stderr", optional_json(b.gamma_stderr)},
              {"satisfied", b.satisfied}};
}

BoundReport bound_from(const json& j) {
  BoundReport b;
  b.alpha = j.at("alpha").get<double>();
  b.tau = j.at("tau").get<double>();
  b.closed_form = j.at("closed_form").get<double>();
  b.quadrature = optional_from<double>(j, "quadrature");
  b.quadrature_error = optional_from<double>(j, "quadrature_error");
  b.simulated_gamma = optional_from<double>(j, "simulated_gamma");
  b.gamma_stderr = optional_from<double>(j, "gamma_stderr");
  b.satisfied = j.at("satisfied").get<bool>();
  return b;
}

json results_json(const RunManifest& m) {
  json pairs = json::array();
  for (const auto& p : m.pairs) {
    pairs.push_back({{"label", p.label},
                     {"a1_deg", p.a1_deg},
                     {"a2_deg", p.a2_deg},
                     {"stats", stats_json(p.stats)}});
  }
  json bounds = json::array();
  for (const auto& b : m.bounds) bounds.push_back(bound_json(b));
  return json{{"command", m.command},
              {"config", config_json(m.config)},
              {"pairs", pairs},
              {"inequality", m.inequality ? inequality_json(*m.inequality) : json(nullptr)},
              {"bounds", bounds}};
}

}  // namespace

std::string_view to_string(CoincidenceMode mode) {
  return mode == CoincidenceMode::SameBin ? "same-bin" : "continuous";
}

CoincidenceMode parse_mode(std::string_view text) {
  if (text == "same-bin") return CoincidenceMode::SameBin;
  if (text == "continuous") return CoincidenceMode::Continuous;
  throw ConfigError("unknown coincidence mode '" + std::string(text) + "'");
}

std::string serialize(const RunManifest& m) {
  json j = results_json(m);
  j["run"] = {{"version", m.version},
              {"timestamp", m.timestamp},
              {"wall_seconds", m.wall_seconds},
              {"workers", m.config.workers}};
  return j.dump(2) + "\n";
}

std::string canonical_results(const RunManifest& m) { return results_json(m).dump(2) + "\n"; }

RunManifest parse_manifest(std::string_view text) {
  const json j = json::parse(text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  apply_config_json(m.config, j.at("config").dump());
  for (const auto& p : j.at("pairs")) {
    m.pairs.push_back({p.at("label").get<std::string>(), p.at("a1_deg").get<double>(),
                       p.at("a2_deg").get<double>(), stats_from(p.at("stats"))});
  }
  if (!j.at("inequality").is_null()) m.inequality = inequality_from(j.at("inequality"));
  for (const auto& b : j.at("bounds")) m.bounds.push_back(bound_from(b));
  const json& run = j.at("run");
  m.version = run.at("version").get<std::string>();
  m.timestamp = run.at("timestamp").get<std::string>();
  m.wall_seconds = run.at("wall_seconds").get<double>();
  m.config.workers = run.at("workers").get<unsigned>();
  return m;
}

void apply_config_json(ExperimentConfig& c, std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"settings_deg", "alpha_grid_deg", "tau_grid",
                                           "tau",          "window",         "d_exponent",
                                           "coincidence_mode", "n_events",  "seed",
                                           "workers"};
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    if (j.contains("settings_deg")) c.settings_deg = j["settings_deg"].get<std::array<double, 4>>();
    if (j.contains("alpha_grid_deg")) c.alpha_grid_deg = j["alpha_grid_deg"].get<std::vector<double>>();
    if (j.contains("tau_grid")) c.tau_grid = j["tau_grid"].get<std::vector<double>>();
    if (j.contains("tau")) c.tau = j["tau"].get<double>();
    if (j.contains("window")) {
      c.window = j["window"].is_null() ? std::nullopt : std::optional(j["window"].get<double>());
    }
    if (j.contains("d_exponent")) c.d_exponent = j["d_exponent"].get<double>();
    if (j.contains("coincidence_mode")) {
      c.coincidence_mode = parse_mode(j["coincidence_mode"].get<std::string>());
    }
    if (j.contains("n_events")) c.n_events = j["n_events"].get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) c.workers = j["workers"].get<unsigned>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig c;
  apply_config_json(c, buf.str());
  return c;
}

std::string serialize(const ExperimentConfig& config) {
  json j = config_json(config);
  j["workers"] = config.workers;
  return j.dump(2) + "\n";
}

}  // namespace eprb
