#pragma once

// JSON persistence for run manifests and configuration files.

#include <filesystem>
#include <string>
#include <string_view>

#include "eprb/experiment.hpp"

namespace eprb {

std::string serialize(const RunManifest& manifest);
RunManifest parse_manifest(std::string_view text);

/// The manifest without its run block (version, timestamp, wall clock,
/// workers); byte-identical for any two runs with the same seed and config.
std::string canonical_results(const RunManifest& manifest);

/// Overlays the keys present in a JSON config document onto `config`.
/// Unknown keys and ill-typed values raise ConfigError.
void apply_config_json(ExperimentConfig& config, std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize(const ExperimentConfig& config);

std::string_view to_string(CoincidenceMode mode);
/// Accepts "same-bin" or "continuous"; throws ConfigError otherwise.
CoincidenceMode parse_mode(std::string_view text);

}  // namespace eprb
