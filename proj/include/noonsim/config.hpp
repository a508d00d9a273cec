#pragma once

// Strict experiment configuration.
//
// Text format: `key = value` lines grouped under `[section]` headers; `#`
// starts a comment. A key `k` under `[s]` is addressed as `s.k`. The only
// top-level key is `scenario`. Unknown keys and malformed values are rejected
// with the offending line.
//
// JSON format: {"scenario": "...", "parameters": {"s.k": "value", ...}}, which
// is also what every run writes into its summary.json.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace noonsim {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario {
  kGroundState,
  kRamp,
  kRamseySweep,
  kCoherenceAnalysis,
  kEstimateU,
  kFig1,
  kFig2,
  kFig3,
  kFig4,
  kFig5,
  kFig6,
  kFig7,
  kFig8,
};

/// Output directory name: ground-state, ramp, ramsey, coherence, estimate-u, fig1..fig8.
std::string scenario_name(Scenario s);
/// Accepts the directory name, the upper-case enum spelling (GROUND_STATE,
/// RAMSEY_SWEEP, ...) and FIG1..FIG8 in any case.
std::optional<Scenario> parse_scenario(std::string_view text);
bool is_preset(Scenario s);

class ExperimentConfig {
 public:
  /// All keys at their defaults, with the preset's own values applied
  /// for FIG1..FIG8.
  explicit ExperimentConfig(Scenario scenario);

  Scenario scenario() const noexcept { return scenario_; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  /// Validates the key and the value's type; `where` prefixes diagnostics.
  void set(const std::string& key, const std::string& value, const std::string& where = "");

  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<int> integers(const std::string& key) const;
  /// Empty value -> nullopt.
  std::optional<double> optional_number(const std::string& key) const;

 private:
  Scenario scenario_;
  std::map<std::string, std::string> values_;
};

/// Every key the schema knows, sorted.
std::vector<std::string> known_keys();

/// Applies a key=value document. A `scenario` line must match `config`'s.
void apply_text(ExperimentConfig& config, std::string_view text, const std::string& source);
/// Applies {"scenario", "parameters"} JSON.
void apply_json(ExperimentConfig& config, std::string_view text, const std::string& source);

/// Reads the scenario named inside a config file (either format), if any.
std::optional<Scenario> scenario_in_file(const std::string& path);
/// Builds a config for `scenario` and applies the file at `path` (JSON when it
/// starts with '{').
void apply_file(ExperimentConfig& config, const std::string& path);

}  // namespace noonsim
