#include "noonsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace noonsim {

namespace {

enum class Kind { kInt, kReal, kOptionalReal, kRealList, kIntList, kBool, kChoice, kText };

struct KeySpec {
  const char* key;
  const char* fallback;
  Kind kind;
  std::vector<std::string> choices{};
};

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> keys = {
      {"output.dir", "out", Kind::kText},
      {"system.atoms", "20", Kind::kInt},
      {"system.kappa", "10", Kind::kReal},
      {"system.u", "0", Kind::kReal},
      {"system.u_left", "", Kind::kOptionalReal},
      {"system.u_right", "", Kind::kOptionalReal},
      {"system.e_left", "0", Kind::kReal},
      {"system.e_right", "0", Kind::kReal},
      {"system.convention", "full", Kind::kChoice, {"half", "full"}},
      {"ground.tol", "1e-12", Kind::kReal},
      {"ground.max_iterations", "20000000", Kind::kInt},
      {"ramp.u_start", "1", Kind::kReal},
      {"ramp.u_end", "-3", Kind::kReal},
      {"ramp.times", "0.5,4", Kind::kRealList},
      {"ramp.samples", "200", Kind::kInt},
      {"integrator.method", "adaptive_rk", Kind::kChoice, {"adaptive_rk", "exponential_eigen"}},
      {"integrator.tolerance", "1e-13", Kind::kReal},
      {"integrator.max_step", "0.01", Kind::kReal},
      {"state.kind", "noon", Kind::kChoice, {"noon", "mixture", "ground", "ramp", "basis"}},
      {"state.phi", "0", Kind::kReal},
      {"state.n", "0", Kind::kInt},
      {"state.ramp_time", "4", Kind::kReal},
      {"ramsey.kappa", "10", Kind::kReal},
      {"ramsey.u", "0", Kind::kReal},
      {"ramsey.duration", "", Kind::kOptionalReal},
      {"ramsey.phase_well", "right", Kind::kChoice, {"right", "left"}},
      {"ramsey.grid", "512", Kind::kInt},
      {"ramsey.max_moment", "2", Kind::kInt},
      {"ramsey.distributions", "true", Kind::kBool},
      {"ramsey.theta", "1.5707963267948966", Kind::kReal},
      {"coherence.calibration_grid", "0", Kind::kInt},
      {"physical.mass_amu", "84.91178974", Kind::kReal},
      {"physical.omega", "1000,1000,100", Kind::kRealList},
      {"physical.omega_units", "angular", Kind::kChoice, {"angular", "hertz"}},
      {"physical.a_start_a0", "2000", Kind::kReal},
      {"physical.a_end_a0", "-200", Kind::kReal},
      {"sweep.u_over_kappa", "", Kind::kRealList},
      {"sweep.atoms", "", Kind::kIntList},
      {"sweep.u_interference", "", Kind::kRealList},
  };
  return keys;
}

const KeySpec* find_key(const std::string& key) {
  const auto& s = schema();
  const auto it = std::find_if(s.begin(), s.end(), [&](const KeySpec& k) { return key == k.key; });
  return it == s.end() ? nullptr : &*it;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<double> parse_real(const std::string& s) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> parse_int(const std::string& s) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::string check_value(const KeySpec& spec, const std::string& raw) {
  const std::string v = trim(raw);
  switch (spec.kind) {
    case Kind::kInt:
      if (!parse_int(v)) return "expected an integer";
      break;
    case Kind::kReal:
      if (!parse_real(v)) return "expected a finite number";
      break;
    case Kind::kOptionalReal:
      if (!v.empty() && !parse_real(v)) return "expected a finite number or nothing";
      break;
    case Kind::kRealList:
      for (const auto& item : split_list(v)) {
        if (!parse_real(item)) return "expected a comma-separated list of numbers";
      }
      break;
    case Kind::kIntList:
      for (const auto& item : split_list(v)) {
        if (!parse_int(item)) return "expected a comma-separated list of integers";
      }
      break;
    case Kind::kBool:
      if (v != "true" && v != "false") return "expected true or false";
      break;
    case Kind::kChoice:
      if (std::find(spec.choices.begin(), spec.choices.end(), v) == spec.choices.end()) {
        std::string msg = "expected one of";
        for (const auto& c : spec.choices) msg += " " + c;
        return msg;
      }
      break;
    case Kind::kText:
      if (v.empty()) return "expected a nonempty value";
      break;
  }
  return {};
}

struct PresetValue {
  Scenario scenario;
  const char* key;
  const char* value;
};

// Parameters that define each figure preset.
const std::vector<PresetValue>& preset_values() {
  static const std::vector<PresetValue> v = {
      {Scenario::kFig1, "system.atoms", "20"},
      {Scenario::kFig1, "system.kappa", "1"},
      {Scenario::kFig1, "sweep.u_over_kappa", "0,-0.1,-0.5"},
      {Scenario::kFig2, "sweep.atoms", "1,2"},
      {Scenario::kFig2, "ramsey.max_moment", "2"},
      {Scenario::kFig3, "system.atoms", "20"},
      {Scenario::kFig3, "sweep.u_over_kappa", "0,-0.01,-0.025"},
      {Scenario::kFig3, "ramsey.theta", "1.5707963267948966"},
      {Scenario::kFig4, "sweep.atoms", "10,20"},
      {Scenario::kFig4, "sweep.u_over_kappa", "0,-0.01,-0.025"},
      {Scenario::kFig5, "system.atoms", "20"},
      {Scenario::kFig5, "system.kappa", "10"},
      {Scenario::kFig5, "ramp.u_start", "1"},
      {Scenario::kFig5, "ramp.u_end", "-3"},
      {Scenario::kFig5, "ramp.times", "0.5,4"},
      {Scenario::kFig6, "system.atoms", "20"},
      {Scenario::kFig6, "system.kappa", "10"},
      {Scenario::kFig6, "ramp.u_start", "1"},
      {Scenario::kFig6, "ramp.u_end", "-3"},
      {Scenario::kFig6, "ramp.times", "0.25,0.5,1,2,4"},
      {Scenario::kFig7, "system.atoms", "20"},
      {Scenario::kFig7, "system.kappa", "10"},
      {Scenario::kFig7, "ramp.u_start", "1"},
      {Scenario::kFig7, "ramp.u_end", "-1"},
      {Scenario::kFig7, "state.ramp_time", "4"},
      {Scenario::kFig7, "ramsey.kappa", "10"},
      {Scenario::kFig7, "sweep.u_interference", "0,-0.1,-0.25"},
      {Scenario::kFig8, "system.atoms", "20"},
      {Scenario::kFig8, "system.kappa", "10"},
      {Scenario::kFig8, "ramp.u_start", "1"},
      {Scenario::kFig8, "ramp.u_end", "-1"},
      {Scenario::kFig8, "state.ramp_time", "4"},
      {Scenario::kFig8, "ramsey.kappa", "10"},
      {Scenario::kFig8, "sweep.u_interference", "0,-0.1,-0.25"},
  };
  return v;
}

}  // namespace

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kGroundState: return "ground-state";
    case Scenario::kRamp: return "ramp";
    case Scenario::kRamseySweep: return "ramsey";
    case Scenario::kCoherenceAnalysis: return "coherence";
    case Scenario::kEstimateU: return "estimate-u";
    case Scenario::kFig1: return "fig1";
    case Scenario::kFig2: return "fig2";
    case Scenario::kFig3: return "fig3";
    case Scenario::kFig4: return "fig4";
    case Scenario::kFig5: return "fig5";
    case Scenario::kFig6: return "fig6";
    case Scenario::kFig7: return "fig7";
    case Scenario::kFig8: return "fig8";
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view text) {
  const std::string t = lower(trim(text));
  static const std::map<std::string, Scenario> names = {
      {"ground-state", Scenario::kGroundState}, {"ground_state", Scenario::kGroundState},
      {"ramp", Scenario::kRamp},
      {"ramsey", Scenario::kRamseySweep},       {"ramsey_sweep", Scenario::kRamseySweep},
      {"coherence", Scenario::kCoherenceAnalysis}, {"coherence_analysis", Scenario::kCoherenceAnalysis},
      {"estimate-u", Scenario::kEstimateU},     {"estimate_u", Scenario::kEstimateU},
      {"fig1", Scenario::kFig1}, {"fig2", Scenario::kFig2}, {"fig3", Scenario::kFig3},
      {"fig4", Scenario::kFig4}, {"fig5", Scenario::kFig5}, {"fig6", Scenario::kFig6},
      {"fig7", Scenario::kFig7}, {"fig8", Scenario::kFig8},
  };
  const auto it = names.find(t);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

bool is_preset(Scenario s) { return s >= Scenario::kFig1; }

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& k : schema()) keys.emplace_back(k.key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

ExperimentConfig::ExperimentConfig(Scenario scenario) : scenario_(scenario) {
  for (const auto& k : schema()) values_[k.key] = k.fallback;
  for (const auto& p : preset_values()) {
    if (p.scenario == scenario) values_[p.key] = p.value;
  }
}

void ExperimentConfig::set(const std::string& key, const std::string& value, const std::string& where) {
  const std::string prefix = where.empty() ? "" : where + ": ";
  const KeySpec* spec = find_key(key);
  if (!spec) throw ValidationError(prefix + "unknown key '" + key + "'");
  const std::string problem = check_value(*spec, value);
  if (!problem.empty()) throw ValidationError(prefix + "key '" + key + "': " + problem + ", got '" + value + "'");
  values_[key] = trim(value);
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ValidationError("unknown key '" + key + "'");
  return it->second;
}

double ExperimentConfig::number(const std::string& key) const {
  const auto v = parse_real(text(key));
  if (!v) throw ValidationError("key '" + key + "' is not a number");
  return *v;
}

int ExperimentConfig::integer(const std::string& key) const {
  const auto v = parse_int(text(key));
  if (!v) throw ValidationError("key '" + key + "' is not an integer");
  return static_cast<int>(*v);
}

bool ExperimentConfig::flag(const std::string& key) const { return text(key) == "true"; }

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) out.push_back(*parse_real(item));
  return out;
}

std::vector<int> ExperimentConfig::integers(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : split_list(text(key))) out.push_back(static_cast<int>(*parse_int(item)));
  return out;
}

std::optional<double> ExperimentConfig::optional_number(const std::string& key) const {
  const std::string& t = text(key);
  if (t.empty()) return std::nullopt;
  return number(key);
}

void apply_text(ExperimentConfig& config, std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ValidationError(where + ": malformed section header");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      if (section.empty()) throw ValidationError(where + ": empty section name");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ValidationError(where + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (section.empty() && key == "scenario") {
      const auto s = parse_scenario(value);
      if (!s) throw ValidationError(where + ": unknown scenario '" + value + "'");
      if (*s != config.scenario()) {
        throw ValidationError(where + ": file is for scenario '" + scenario_name(*s) + "', not '" +
                              scenario_name(config.scenario()) + "'");
      }
      continue;
    }
    if (section.empty()) throw ValidationError(where + ": key '" + key + "' must be inside a [section]");
    config.set(section + "." + key, value, where);
  }
}

void apply_json(ExperimentConfig& config, std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(source + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError(source + ": expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "scenario") {
      const auto s = value.is_string() ? parse_scenario(value.get<std::string>()) : std::nullopt;
      if (!s) throw ValidationError(source + ": bad scenario");
      if (*s != config.scenario()) {
        throw ValidationError(source + ": file is for scenario '" + scenario_name(*s) + "', not '" +
                              scenario_name(config.scenario()) + "'");
      }
    } else if (key == "parameters") {
      if (!value.is_object()) throw ValidationError(source + ": 'parameters' must be an object");
      for (const auto& [k, v] : value.items()) {
        if (!v.is_string()) throw ValidationError(source + ": parameter '" + k + "' must be a string");
        config.set(k, v.get<std::string>(), source);
      }
    } else if (key != "results" && key != "notes" && key != "files" && key != "wall_time_s" &&
               key != "convention") {
      // Summary files carry these extra sections; anything else is a typo.
      throw ValidationError(source + ": unknown top-level field '" + key + "'");
    }
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

}  // namespace

std::optional<Scenario> scenario_in_file(const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) {
    try {
      const auto doc = nlohmann::json::parse(text);
      if (doc.contains("scenario") && doc["scenario"].is_string()) {
        return parse_scenario(doc["scenario"].get<std::string>());
      }
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(path + ": " + e.what());
    }
    return std::nullopt;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    if (body.front() == '[') break;
    const auto eq = body.find('=');
    if (eq != std::string::npos && trim(std::string_view(body).substr(0, eq)) == "scenario") {
      return parse_scenario(trim(std::string_view(body).substr(eq + 1)));
    }
  }
  return std::nullopt;
}

void apply_file(ExperimentConfig& config, const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) {
    apply_json(config, text, path);
  } else {
    apply_text(config, text, path);
  }
}

}  // namespace noonsim
