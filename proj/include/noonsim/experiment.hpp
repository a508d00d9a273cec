#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "noonsim/config.hpp"
#include "noonsim/fock.hpp"

namespace noonsim {

struct RunResult {
  std::filesystem::path directory;          // <output.dir>/<scenario>
  std::vector<std::filesystem::path> files;  // CSVs, then summary.json
  nlohmann::json summary;
};

/// Runs one scenario and writes <output.dir>/<scenario>/*.csv plus
/// summary.json. CSV bytes depend only on the configuration.
/// Throws ValidationError for inconsistent parameters and NumericalError
/// subclasses for numerical failures.
RunResult run(const ExperimentConfig& config);

/// {"atoms": N, "amplitudes": [[re, im], ...]}
nlohmann::json state_to_json(const FockVector& state);
/// Inverse of state_to_json; throws ValidationError on a malformed document.
FockVector state_from_json(const nlohmann::json& doc);

}  // namespace noonsim
