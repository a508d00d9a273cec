#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noonsim/config.hpp"
#include "noonsim/csv.hpp"
#include "noonsim/errors.hpp"
#include "noonsim/experiment.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  std::string convention;
  // estimate-u flags; also accepted by the other subcommands and ignored there
  std::optional<double> mass_amu;
  std::string omega;
  std::string omega_units;
  std::string scattering_length_a0;
  bool quiet = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("-c,--config", o.config_path, "key=value or JSON configuration file");
  app->add_option("-s,--set", o.overrides, "Override one key, e.g. --set system.atoms=12 (repeatable)");
  app->add_option("-o,--output-dir", o.output_dir, "Root output directory (output.dir)");
  app->add_option("--convention", o.convention, "Interaction convention (system.convention)")
      ->check(CLI::IsMember({"half", "full"}));
  app->add_option("--mass-amu", o.mass_amu, "Atomic mass in u (physical.mass_amu)");
  app->add_option("--omega", o.omega, "Trap frequencies \"wx,wy,wz\" (physical.omega)");
  app->add_option("--omega-units", o.omega_units, "Units of --omega (physical.omega_units)")
      ->check(CLI::IsMember({"angular", "hertz"}));
  app->add_option("--scattering-length-a0", o.scattering_length_a0,
                  "Scattering length(s) in Bohr radii: \"a\" or \"a_start,a_end\"");
  app->add_flag("-q,--quiet", o.quiet, "Do not print the list of written files");
}

noonsim::ExperimentConfig build_config(noonsim::Scenario scenario, const CommonOptions& o) {
  using noonsim::ValidationError;
  noonsim::ExperimentConfig config(scenario);
  if (!o.config_path.empty()) noonsim::apply_file(config, o.config_path);
  for (const auto& item : o.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--set " + item + ": expected key=value");
    config.set(item.substr(0, eq), item.substr(eq + 1), "--set");
  }
  if (!o.output_dir.empty()) config.set("output.dir", o.output_dir, "--output-dir");
  if (!o.convention.empty()) config.set("system.convention", o.convention, "--convention");
  if (o.mass_amu) config.set("physical.mass_amu", noonsim::format_double(*o.mass_amu), "--mass-amu");
  if (!o.omega.empty()) config.set("physical.omega", o.omega, "--omega");
  if (!o.omega_units.empty()) config.set("physical.omega_units", o.omega_units, "--omega-units");
  if (!o.scattering_length_a0.empty()) {
    const auto comma = o.scattering_length_a0.find(',');
    const std::string first = o.scattering_length_a0.substr(0, comma);
    const std::string second = comma == std::string::npos ? first : o.scattering_length_a0.substr(comma + 1);
    config.set("physical.a_start_a0", first, "--scattering-length-a0");
    config.set("physical.a_end_a0", second, "--scattering-length-a0");
  }
  return config;
}

int execute(const noonsim::ExperimentConfig& config, bool quiet) {
  const auto result = noonsim::run(config);
  if (!quiet) {
    for (const auto& f : result.files) std::cout << f.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode condensate and NOON-state interferometry simulator"};
  app.require_subcommand(1);

  struct Named {
    const char* name;
    noonsim::Scenario scenario;
    const char* help;
  };
  const Named named[] = {
      {"ground-state", noonsim::Scenario::kGroundState, "Imaginary-time ground state of the two-mode Hamiltonian"},
      {"ramp", noonsim::Scenario::kRamp, "Linear interaction ramps from the u_start ground state"},
      {"ramsey", noonsim::Scenario::kRamseySweep, "Phase plus beam-splitter fringes over a theta grid"},
      {"coherence", noonsim::Scenario::kCoherenceAnalysis, "Parity Fourier spectrum and B-table reconstruction"},
      {"estimate-u", noonsim::Scenario::kEstimateU, "Interaction strength from trap and scattering length"},
  };

  CommonOptions options;
  std::optional<noonsim::Scenario> chosen;
  for (const auto& n : named) {
    auto* sub = app.add_subcommand(n.name, n.help);
    add_common(sub, options);
    sub->callback([&chosen, s = n.scenario] { chosen = s; });
  }

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "Run a figure preset FIG1..FIG8");
  preset->add_option("name", preset_name, "FIG1..FIG8")->required();
  add_common(preset, options);

  auto* run_cmd = app.add_subcommand("run", "Run the scenario named inside --config");
  add_common(run_cmd, options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (preset->parsed()) {
      const auto s = noonsim::parse_scenario(preset_name);
      if (!s || !noonsim::is_preset(*s)) throw noonsim::ValidationError("unknown preset '" + preset_name + "'");
      chosen = *s;
    } else if (run_cmd->parsed()) {
      if (options.config_path.empty()) throw noonsim::ValidationError("run: --config is required");
      chosen = noonsim::scenario_in_file(options.config_path);
      if (!chosen) throw noonsim::ValidationError(options.config_path + ": no scenario given");
    }
    return execute(build_config(*chosen, options), options.quiet);
  } catch (const noonsim::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const noonsim::ConvergenceFailure& e) {
    std::cerr << "numerical error (convergence): " << e.what() << '\n';
    return kExitNumerical;
  } catch (const noonsim::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
