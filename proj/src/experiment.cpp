#include "noonsim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>

#include "noonsim/coherence.hpp"
#include "noonsim/csv.hpp"
#include "noonsim/errors.hpp"
#include "noonsim/evolve.hpp"
#include "noonsim/fock.hpp"
#include "noonsim/physical.hpp"
#include "noonsim/ramsey.hpp"

namespace noonsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kBinomialVarianceNote =
    "U/kappa = 0 gives the binomial ground state with diff_variance = N (20 for N = 20); "
    "a quoted value of 12 for this case is not reproduced.";

std::string panel(std::size_t i) { return std::string("panel_") + static_cast<char>('a' + i); }

// ---- config -> model -------------------------------------------------------

InteractionConvention convention(const ExperimentConfig& c) {
  return c.text("system.convention") == "half" ? InteractionConvention::kHalf : InteractionConvention::kFull;
}

int atoms(const ExperimentConfig& c) {
  const int n = c.integer("system.atoms");
  if (n < 1) throw ValidationError("system.atoms must be >= 1");
  return n;
}

SystemParams system_params(const ExperimentConfig& c) {
  SystemParams p;
  p.kappa = c.number("system.kappa");
  const double u = c.number("system.u");
  p.u_left = c.optional_number("system.u_left").value_or(u);
  p.u_right = c.optional_number("system.u_right").value_or(u);
  p.e_left = c.number("system.e_left");
  p.e_right = c.number("system.e_right");
  p.convention = convention(c);
  if (p.kappa < 0.0) throw ValidationError("system.kappa must be >= 0");
  return p;
}

IntegratorConfig integrator(const ExperimentConfig& c) {
  IntegratorConfig cfg;
  cfg.method = c.text("integrator.method") == "exponential_eigen" ? IntegrationMethod::kExponentialEigen
                                                                  : IntegrationMethod::kAdaptiveRK;
  cfg.step_tolerance = c.number("integrator.tolerance");
  cfg.max_step = c.number("integrator.max_step");
  if (!(cfg.step_tolerance > 0.0) || !(cfg.max_step > 0.0)) {
    throw ValidationError("integrator.tolerance and integrator.max_step must be > 0");
  }
  return cfg;
}

GroundStateOptions ground_options(const ExperimentConfig& c) {
  GroundStateOptions g;
  g.tol = c.number("ground.tol");
  const int iters = c.integer("ground.max_iterations");
  if (!(g.tol > 0.0) || iters < 1) throw ValidationError("ground.tol and ground.max_iterations must be > 0");
  g.max_iterations = static_cast<std::size_t>(iters);
  return g;
}

RamseyConfig ramsey_config(const ExperimentConfig& c) {
  RamseyConfig r;
  r.kappa_bs = c.number("ramsey.kappa");
  r.u_interference = c.number("ramsey.u");
  r.bs_duration = c.optional_number("ramsey.duration");
  r.phase_well = c.text("ramsey.phase_well") == "left" ? PhaseWell::kLeft : PhaseWell::kRight;
  r.convention = convention(c);
  if (!(r.kappa_bs > 0.0)) throw ValidationError("ramsey.kappa must be > 0");
  if (r.bs_duration && !(*r.bs_duration > 0.0)) throw ValidationError("ramsey.duration must be > 0");
  return r;
}

std::vector<double> theta_grid(const ExperimentConfig& c) {
  const int g = c.integer("ramsey.grid");
  if (g < 1) throw ValidationError("ramsey.grid must be >= 1");
  return uniform_theta_grid(static_cast<std::size_t>(g));
}

int max_moment(const ExperimentConfig& c) {
  const int m = c.integer("ramsey.max_moment");
  if (m < 0 || m > kMaxQuadratureMoment) throw ValidationError("ramsey.max_moment out of range");
  return m;
}

RampSpec ramp_spec(const ExperimentConfig& c) {
  RampSpec s;
  s.atoms = atoms(c);
  s.kappa = c.number("system.kappa");
  s.u_start = c.number("ramp.u_start");
  s.u_end = c.number("ramp.u_end");
  s.convention = convention(c);
  const int samples = c.integer("ramp.samples");
  if (samples < 2) throw ValidationError("ramp.samples must be >= 2");
  s.samples = static_cast<std::size_t>(samples);
  return s;
}

std::vector<double> positive_list(const ExperimentConfig& c, const std::string& key) {
  auto v = c.numbers(key);
  if (v.empty()) throw ValidationError(key + " must list at least one value");
  for (double x : v) {
    if (!(x > 0.0)) throw ValidationError(key + " entries must be > 0");
  }
  return v;
}

MixedEnsemble build_state(const ExperimentConfig& c) {
  const int n = atoms(c);
  const std::string kind = c.text("state.kind");
  if (kind == "noon") return MixedEnsemble::pure(make_noon(n, c.number("state.phi")));
  if (kind == "mixture") return make_mixture(n);
  if (kind == "basis") {
    const int k = c.integer("state.n");
    if (k < 0 || k > n) throw ValidationError("state.n must lie in 0..system.atoms");
    return MixedEnsemble::pure(FockVector::basis(n, k));
  }
  if (kind == "ground") return MixedEnsemble::pure(ground_state_report(system_params(c), n, ground_options(c)).state);
  RampSpec spec = ramp_spec(c);
  spec.ramp_time = c.number("state.ramp_time");
  spec.samples = 2;
  if (!(spec.ramp_time > 0.0)) throw ValidationError("state.ramp_time must be > 0");
  return MixedEnsemble::pure(ramp_run(spec, integrator(c), ground_options(c)).final_state());
}

// ---- output ----------------------------------------------------------------

class Output {
 public:
  explicit Output(const ExperimentConfig& config)
      : dir_(fs::path(config.text("output.dir")) / scenario_name(config.scenario())) {
    fs::create_directories(dir_);
  }

  void csv(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / (name + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    files_.push_back(path);
  }

  const fs::path& dir() const { return dir_; }
  std::vector<fs::path>& files() { return files_; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

void write_json(Output& out, const std::string& name, const json& doc) {
  const fs::path path = out.dir() / (name + ".json");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << doc.dump(2) << '\n';
  out.files().push_back(path);
}

void write_distribution(std::ostream& out, const std::vector<double>& p) {
  CsvWriter csv(out);
  csv.header({"n", "n_left", "probability"});
  const auto atoms = static_cast<double>(p.size() - 1);
  for (std::size_t n = 0; n < p.size(); ++n) csv.row({static_cast<double>(n), atoms - static_cast<double>(n), p[n]});
}

void write_state(std::ostream& out, const FockVector& s) {
  CsvWriter csv(out);
  csv.header({"n", "n_left", "probability", "re", "im"});
  for (std::size_t n = 0; n < s.dimension(); ++n) {
    csv.row({static_cast<double>(n), static_cast<double>(s.atoms()) - static_cast<double>(n), std::norm(s[n]),
             s[n].real(), s[n].imag()});
  }
}

void write_trajectory(std::ostream& out, const Trajectory& t) {
  CsvWriter csv(out);
  csv.header({"t", "n", "probability"});
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    const auto p = t.states[i].probabilities();
    for (std::size_t n = 0; n < p.size(); ++n) csv.row({t.times[i], static_cast<double>(n), p[n]});
  }
}

void write_observables(std::ostream& out, const Trajectory& t) {
  CsvWriter csv(out);
  csv.header({"t", "diff_variance", "fidelity"});
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    csv.row({t.times[i], diff_variance(t.states[i]), noon_fidelity(t.states[i])});
  }
}

void write_moments(std::ostream& out, const FringeData& f) {
  CsvWriter csv(out);
  std::vector<std::string> header{"theta"};
  for (int k = 0; k <= f.max_moment; ++k) header.push_back("moment_" + std::to_string(k));
  csv.header(header);
  for (const auto& r : f.records) {
    std::vector<double> row{r.theta};
    row.insert(row.end(), r.moments.begin(), r.moments.end());
    csv.row(row);
  }
}

double max_drift(const FringeData& f) {
  double d = 0.0;
  for (const auto& r : f.records) d = std::max(d, r.norm_drift);
  return d;
}

json fringe_summary(const FringeData& f) {
  const auto p = f.parities();
  const auto m = f.mean_diffs();
  return {{"atoms", f.atoms},
          {"parity_min", *std::min_element(p.begin(), p.end())},
          {"parity_max", *std::max_element(p.begin(), p.end())},
          {"mean_diff_min", *std::min_element(m.begin(), m.end())},
          {"mean_diff_max", *std::max_element(m.begin(), m.end())},
          {"max_norm_drift", max_drift(f)}};
}

json spectrum_summary(const CoherenceSpectrum& s) {
  const auto top = static_cast<std::size_t>(s.atoms);
  return {{"frequency_n_amplitude", std::abs(s.fourier[top])},
          {"frequency_n_power_fraction", s.power_fraction(s.atoms)},
          {"high_band_max", s.high_band_max}};
}

// ---- scenarios -------------------------------------------------------------

void ground_panel(const ExperimentConfig& c, const SystemParams& params, Output& out, const std::string& name,
                  json& results) {
  const int n = atoms(c);
  const auto g = ground_state_report(params, n, ground_options(c));
  const SpectralPropagator oracle(hamiltonian_matrix(params, n));
  double overlap = 0.0;
  for (const auto& v : oracle.ground_space(1e-9 * std::max(1.0, oracle.eigenvalues().cwiseAbs().maxCoeff()))) {
    overlap += fidelity(v, g.state);
  }
  out.csv(name, [&](std::ostream& os) { write_state(os, g.state); });
  write_json(out, name + "_state", state_to_json(g.state));
  results[name] = {{"u_left", params.u_left},
                   {"u_right", params.u_right},
                   {"kappa", params.kappa},
                   {"energy", g.energy},
                   {"diff_variance", diff_variance(g.state)},
                   {"mean_left", mean_left(g.state)},
                   {"parity", parity(g.state)},
                   {"noon_fidelity", noon_fidelity(g.state)},
                   {"iterations", g.iterations},
                   {"oracle_overlap", overlap}};
}

void run_ground_state(const ExperimentConfig& c, Output& out, json& results, json& notes) {
  const SystemParams p = system_params(c);
  ground_panel(c, p, out, "ground_state", results);
  if (p.u_left == 0.0 && p.u_right == 0.0 && p.is_symmetric()) notes.push_back(kBinomialVarianceNote);
}

void run_fig1(const ExperimentConfig& c, Output& out, json& results, json& notes) {
  const auto ratios = c.numbers("sweep.u_over_kappa");
  if (ratios.empty()) throw ValidationError("sweep.u_over_kappa must list at least one value");
  const double kappa = c.number("system.kappa");
  json variances = json::array();
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const SystemParams p = SystemParams::symmetric(kappa, ratios[i] * kappa, convention(c));
    ground_panel(c, p, out, panel(i), results);
    results[panel(i)]["u_over_kappa"] = ratios[i];
    variances.push_back(results[panel(i)]["diff_variance"]);
    if (ratios[i] == 0.0) notes.push_back(kBinomialVarianceNote);
  }
  results["diff_variances"] = variances;
}

void run_ramps(const ExperimentConfig& c, Output& out, json& results, bool preset_names) {
  const auto times = positive_list(c, "ramp.times");
  const RampSpec base = ramp_spec(c);
  const IntegratorConfig integ = integrator(c);
  const GroundStateOptions ground = ground_options(c);
  json finals = json::array();
  double drift = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    RampSpec s = base;
    s.ramp_time = times[i];
    const Trajectory t = ramp_run(s, integ, ground);
    const std::string name = preset_names ? panel(i) : "trajectory_T" + format_double(times[i]);
    out.csv(name, [&](std::ostream& os) { write_trajectory(os, t); });
    out.csv(name + "_observables", [&](std::ostream& os) { write_observables(os, t); });
    write_json(out, name + "_final_state", state_to_json(t.final_state()));
    drift = std::max(drift, t.max_norm_drift);
    finals.push_back({{"ramp_time", times[i]},
                      {"diff_variance", diff_variance(t.final_state())},
                      {"fidelity", noon_fidelity(t.final_state())},
                      {"max_norm_drift", t.max_norm_drift}});
  }
  results["final"] = finals;
  results["max_norm_drift"] = drift;
}

void run_fidelity(const ExperimentConfig& c, Output& out, json& results) {
  const auto times = positive_list(c, "ramp.times");
  const FidelitySweep sweep = fidelity_vs_ramp(ramp_spec(c), times, integrator(c), ground_options(c));
  out.csv("fidelity", [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.header({"ramp_time", "fidelity", "diff_variance", "reference_fidelity"});
    for (const auto& p : sweep.points) csv.row({p.ramp_time, p.fidelity, p.diff_variance, sweep.reference_fidelity});
  });
  json pts = json::array();
  for (const auto& p : sweep.points) {
    pts.push_back({{"ramp_time", p.ramp_time}, {"fidelity", p.fidelity}, {"diff_variance", p.diff_variance}});
  }
  results["points"] = pts;
  results["reference_fidelity"] = sweep.reference_fidelity;
}

void run_ramsey(const ExperimentConfig& c, Output& out, json& results) {
  const MixedEnsemble state = build_state(c);
  const FringeData f = fringe_sweep(state, theta_grid(c), ramsey_config(c), max_moment(c));
  const bool dists = c.flag("ramsey.distributions");
  out.csv("fringe", [&](std::ostream& os) { f.write_csv(os, dists); });
  if (f.max_moment > 2) out.csv("moments", [&](std::ostream& os) { write_moments(os, f); });
  results["fringe"] = fringe_summary(f);
}

void run_coherence(const ExperimentConfig& c, Output& out, json& results) {
  const MixedEnsemble state = build_state(c);
  const RamseyConfig rc = ramsey_config(c);
  const CoherenceSpectrum s = analyze_coherence(state, rc, static_cast<std::size_t>(c.integer("ramsey.grid")));
  out.csv("spectrum", [&](std::ostream& os) { s.write_csv(os); });
  results["spectrum"] = spectrum_summary(s);
  if (rc.u_interference == 0.0) {
    const int grid = c.integer("coherence.calibration_grid");
    if (grid < 0) throw ValidationError("coherence.calibration_grid must be >= 0");
    const BTable b = calibrate_B(state.atoms(), rc, static_cast<std::size_t>(grid));
    out.csv("b_table", [&](std::ostream& os) { b.write_csv(os); });
    const auto report = verify_decomposition(state, rc, static_cast<std::size_t>(c.integer("ramsey.grid")));
    out.csv("reconstruction", [&](std::ostream& os) {
      CsvWriter csv(os);
      csv.header({"theta", "simulated", "reconstructed"});
      for (std::size_t j = 0; j < report.thetas.size(); ++j) {
        csv.row({report.thetas[j], report.simulated[j], report.reconstructed[j]});
      }
    });
    results["reconstruction_max_error"] = report.max_error;
    results["b_max_imag"] = b.max_imag();
    results["b_fit_residual"] = b.max_fit_residual();
  }
}

void run_estimate_u(const ExperimentConfig& c, Output& out, json& results) {
  const auto omega = c.numbers("physical.omega");
  if (omega.size() != 3) throw ValidationError("physical.omega needs three values wx,wy,wz");
  const double scale = c.text("physical.omega_units") == "hertz" ? 2.0 * std::numbers::pi : 1.0;
  physical::TrapSpec spec;
  for (std::size_t i = 0; i < 3; ++i) spec.omega[i] = omega[i] * scale;
  spec.mass = c.number("physical.mass_amu") * physical::kAtomicMassUnit;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  const double a_values[2] = {c.number("physical.a_start_a0"), c.number("physical.a_end_a0")};
  double u[2] = {};
  for (int i = 0; i < 2; ++i) {
    spec.scattering_length = a_values[i] * physical::kBohrRadius;
    u[i] = physical::interaction_strength(spec);
  }
  const auto widths = physical::gaussian_widths(spec);
  out.csv("estimate", [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.header({"a_a0", "scattering_length_m", "u"});
    for (int i = 0; i < 2; ++i) csv.row({a_values[i], a_values[i] * physical::kBohrRadius, u[i]});
  });
  results["u_start"] = u[0];
  results["u_end"] = u[1];
  results["gaussian_widths_m"] = {widths[0], widths[1], widths[2]};
  results["omega_rad_per_s"] = {spec.omega[0], spec.omega[1], spec.omega[2]};
}

void run_fig2(const ExperimentConfig& c, Output& out, json& results) {
  const double phi = c.number("state.phi");
  RamseyConfig rc = ramsey_config(c);
  for (int n : c.integers("sweep.atoms")) {
    if (n < 1) throw ValidationError("sweep.atoms entries must be >= 1");
    const FringeData f = fringe_sweep(make_noon(n, phi), theta_grid(c), rc, max_moment(c));
    const std::string name = "fringe_N" + std::to_string(n);
    out.csv(name, [&](std::ostream& os) { f.write_csv(os, c.flag("ramsey.distributions")); });
    // Distance from the operator-algebra fringes of the one- and two-atom NOON states.
    double mean_err = 0.0;
    double var_err = 0.0;
    for (const auto& r : f.records) {
      const double d = r.theta - phi;
      if (n == 1) mean_err = std::max(mean_err, std::abs(r.mean_diff - std::cos(d)));
      if (n == 2) {
        mean_err = std::max(mean_err, std::abs(r.mean_diff));
        var_err = std::max(var_err, std::abs(r.var_diff - (2.0 + 2.0 * std::cos(2.0 * d))));
      }
    }
    json entry = fringe_summary(f);
    if (n <= 2) entry["max_mean_error"] = mean_err;
    if (n == 2) entry["max_variance_error"] = var_err;
    results[name] = entry;
  }
}

json odd_even_summary(const std::vector<double>& p) {
  double odd_max = 0.0;
  double even_min = 1.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n % 2) odd_max = std::max(odd_max, p[n]);
    else even_min = std::min(even_min, p[n]);
  }
  return {{"odd_max", odd_max}, {"even_min", even_min}, {"contrast", odd_max > 0.0 ? even_min / odd_max : HUGE_VAL}};
}

void run_fig3(const ExperimentConfig& c, Output& out, json& results) {
  const auto ratios = c.numbers("sweep.u_over_kappa");
  const FockVector noon = make_noon(atoms(c), c.number("state.phi"));
  const double theta = c.number("ramsey.theta");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    RamseyConfig rc = ramsey_config(c);
    rc.u_interference = ratios[i] * rc.kappa_bs;
    const RamseyRecord r = ramsey_run(noon, theta, rc, 2);
    out.csv(panel(i), [&](std::ostream& os) { write_distribution(os, r.distribution); });
    json entry = odd_even_summary(r.distribution);
    entry["u_over_kappa"] = ratios[i];
    entry["parity"] = r.parity;
    results[panel(i)] = entry;
  }
}

void run_fig4(const ExperimentConfig& c, Output& out, json& results) {
  const auto ratios = c.numbers("sweep.u_over_kappa");
  const auto grid = theta_grid(c);
  const auto sizes = c.integers("sweep.atoms");
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] < 1) throw ValidationError("sweep.atoms entries must be >= 1");
    const FockVector noon = make_noon(sizes[k], c.number("state.phi"));
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      RamseyConfig rc = ramsey_config(c);
      rc.u_interference = ratios[i] * rc.kappa_bs;
      const FringeData f = fringe_sweep(noon, grid, rc, 2);
      const std::string name = panel(k) + "_N" + std::to_string(sizes[k]) + "_" + std::to_string(i);
      out.csv(name, [&](std::ostream& os) { f.write_csv(os, false); });
      json entry = fringe_summary(f);
      entry["u_over_kappa"] = ratios[i];
      entry["parity_amplitude"] = 0.5 * (entry["parity_max"].get<double>() - entry["parity_min"].get<double>());
      if (grid.size() >= 2 * static_cast<std::size_t>(sizes[k]) + 2) entry["spectrum"] = spectrum_summary(parity_fourier(f));
      results[name] = entry;
    }
  }
}

void run_nonideal(const ExperimentConfig& c, Output& out, json& results, bool with_spectrum) {
  const MixedEnsemble state = build_state(c);
  const auto us = c.numbers("sweep.u_interference");
  const auto grid = theta_grid(c);
  for (std::size_t i = 0; i < us.size(); ++i) {
    RamseyConfig rc = ramsey_config(c);
    rc.u_interference = us[i];
    const FringeData f = fringe_sweep(state, grid, rc, 2);
    out.csv(panel(i), [&](std::ostream& os) { f.write_csv(os, false); });
    json entry = fringe_summary(f);
    entry["u_interference"] = us[i];
    if (with_spectrum) {
      CoherenceSpectrum s = parity_fourier(f);
      s.coherence = coherence_sums(state);
      out.csv(panel(i) + "_spectrum", [&](std::ostream& os) { s.write_csv(os); });
      entry["spectrum"] = spectrum_summary(s);
    }
    results[panel(i)] = entry;
  }
  results["state_diff_variance"] = diff_variance(state);
}

}  // namespace

json state_to_json(const FockVector& state) {
  json amps = json::array();
  for (const Complex& c : state.amplitudes()) amps.push_back({c.real(), c.imag()});
  return {{"atoms", state.atoms()}, {"amplitudes", amps}};
}

FockVector state_from_json(const json& doc) {
  try {
    const int n = doc.at("atoms").get<int>();
    const auto& amps = doc.at("amplitudes");
    if (!amps.is_array() || amps.size() != static_cast<std::size_t>(n) + 1) {
      throw ValidationError("state JSON: amplitudes must hold atoms + 1 pairs");
    }
    std::vector<Complex> c;
    c.reserve(amps.size());
    for (const auto& pair : amps) {
      if (!pair.is_array() || pair.size() != 2) throw ValidationError("state JSON: amplitude must be [re, im]");
      c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return FockVector(std::move(c));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("state JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("state JSON: ") + e.what());
  }
}

RunResult run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Output out(config);
  json results = json::object();
  json notes = json::array();
  try {
    switch (config.scenario()) {
      case Scenario::kGroundState: run_ground_state(config, out, results, notes); break;
      case Scenario::kRamp:
        run_ramps(config, out, results, false);
        run_fidelity(config, out, results["fidelity"]);
        break;
      case Scenario::kRamseySweep: run_ramsey(config, out, results); break;
      case Scenario::kCoherenceAnalysis: run_coherence(config, out, results); break;
      case Scenario::kEstimateU: run_estimate_u(config, out, results); break;
      case Scenario::kFig1: run_fig1(config, out, results, notes); break;
      case Scenario::kFig2: run_fig2(config, out, results); break;
      case Scenario::kFig3: run_fig3(config, out, results); break;
      case Scenario::kFig4: run_fig4(config, out, results); break;
      case Scenario::kFig5: run_ramps(config, out, results, true); break;
      case Scenario::kFig6: run_fidelity(config, out, results); break;
      case Scenario::kFig7: run_nonideal(config, out, results, false); break;
      case Scenario::kFig8: run_nonideal(config, out, results, true); break;
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunResult r;
  r.directory = out.dir();
  r.files = out.files();
  json files = json::array();
  for (const auto& f : r.files) files.push_back(f.filename().string());
  json params = json::object();
  for (const auto& [k, v] : config.values()) params[k] = v;
  r.summary = {{"scenario", scenario_name(config.scenario())},
               {"parameters", params},
               {"convention", config.text("system.convention")},
               {"results", results},
               {"notes", notes},
               {"files", files},
               {"wall_time_s", wall}};
  const fs::path summary_path = out.dir() / "summary.json";
  std::ofstream os(summary_path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + summary_path.string());
  os << r.summary.dump(2) << '\n';
  r.files.push_back(summary_path);
  return r;
}

}  // namespace noonsim
