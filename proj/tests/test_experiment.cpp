#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "noonsim/config.hpp"
#include "noonsim/csv.hpp"
#include "noonsim/errors.hpp"
#include "noonsim/experiment.hpp"
#include "noonsim/fock.hpp"

using namespace noonsim;
namespace fs = std::filesystem;
using doctest::Approx;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("noonsim_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExperimentConfig configured(Scenario s, const fs::path& out) {
  ExperimentConfig c(s);
  c.set("output.dir", out.string());
  return c;
}

// All CSV files of a run, keyed by file name.
std::map<std::string, std::string> csv_bytes(const RunResult& r) {
  std::map<std::string, std::string> m;
  for (const auto& f : r.files) {
    if (f.extension() == ".csv") m[f.filename().string()] = slurp(f);
  }
  return m;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(NOONSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(400.0) == "400");
  CHECK(format_double(1e-300) == "1e-300");
  for (double x : {1.0 / 3.0, 282.92476453844364, -3.0877466266670677}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("strict configuration parsing") {
  ExperimentConfig c(Scenario::kGroundState);
  CHECK_THROWS_AS(c.set("system.atom", "20"), ValidationError);
  CHECK_THROWS_AS(c.set("system.atoms", "twenty"), ValidationError);
  CHECK_THROWS_AS(c.set("system.atoms", "2.5"), ValidationError);
  CHECK_THROWS_AS(c.set("system.convention", "quarter"), ValidationError);
  CHECK_THROWS_AS(c.set("ramp.times", "0.5,,4"), ValidationError);
  CHECK_NOTHROW(c.set("system.atoms", "12"));
  CHECK(c.integer("system.atoms") == 12);

  try {
    apply_text(c, "[system]\natoms = 10\n\n[system]\nkapa = 3\n", "cfg.txt");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("cfg.txt:5") != std::string::npos);
    CHECK(what.find("kapa") != std::string::npos);
  }
  CHECK_THROWS_AS(apply_text(c, "atoms = 3\n", "x"), ValidationError);
  CHECK_THROWS_AS(apply_text(c, "[system\natoms = 3\n", "x"), ValidationError);
  CHECK_THROWS_AS(apply_text(c, "scenario = ramp\n", "x"), ValidationError);
  CHECK_NOTHROW(apply_text(c, "# comment\nscenario = ground-state\n[system]\nu = -0.1  # trailing\n", "x"));
  CHECK(c.number("system.u") == -0.1);
  CHECK_THROWS_AS(apply_json(c, R"({"scenario": "ground-state", "parameters": {"system.atoms": 3}})", "j"),
                  ValidationError);
  CHECK_THROWS_AS(apply_json(c, R"({"scenario": "ground-state", "extra": 1})", "j"), ValidationError);
  CHECK_THROWS_AS(apply_json(c, "{not json", "j"), ValidationError);
}

TEST_CASE("scenario names and presets") {
  for (const char* s : {"FIG1", "fig8", "ground-state", "GROUND_STATE", "RAMSEY_SWEEP", "coherence",
                        "COHERENCE_ANALYSIS", "estimate-u", "ESTIMATE_U", "ramp"}) {
    CHECK(parse_scenario(s).has_value());
  }
  CHECK_FALSE(parse_scenario("fig9").has_value());
  CHECK(is_preset(Scenario::kFig3));
  CHECK_FALSE(is_preset(Scenario::kRamp));

  const ExperimentConfig fig1(Scenario::kFig1);
  CHECK(fig1.integer("system.atoms") == 20);
  CHECK(fig1.number("system.kappa") == 1.0);
  CHECK(fig1.numbers("sweep.u_over_kappa") == std::vector<double>{0.0, -0.1, -0.5});
  CHECK(ExperimentConfig(Scenario::kFig5).numbers("ramp.times") == std::vector<double>{0.5, 4.0});
  CHECK(ExperimentConfig(Scenario::kFig6).numbers("ramp.times").size() == 5);
  CHECK(ExperimentConfig(Scenario::kFig8).number("ramp.u_end") == -1.0);
  CHECK(ExperimentConfig(Scenario::kFig8).numbers("sweep.u_interference") == std::vector<double>{0.0, -0.1, -0.25});
}

TEST_CASE("FockVector JSON serialisation round-trips") {
  const auto s = make_noon(5, 0.3);
  const auto back = state_from_json(state_to_json(s));
  for (std::size_t n = 0; n < s.dimension(); ++n) CHECK(back[n] == s[n]);
  CHECK_THROWS_AS(state_from_json(nlohmann::json{{"atoms", 2}, {"amplitudes", {{1.0, 0.0}}}}), ValidationError);
  CHECK_THROWS_AS(state_from_json(nlohmann::json{{"atoms", 1}, {"amplitudes", {{1.0, 0.0}, {1.0, 0.0}}}}),
                  ValidationError);
}

TEST_CASE("FIG1 preset: files, variances and the binomial-variance note") {
  const auto out = scratch("fig1");
  const auto r = run(configured(Scenario::kFig1, out));
  CHECK(r.directory == out / "fig1");
  for (const char* f : {"panel_a.csv", "panel_b.csv", "panel_c.csv", "summary.json"}) CHECK(fs::exists(r.directory / f));
  const auto& v = r.summary["results"]["diff_variances"];
  CHECK(v[0].get<double>() == Approx(20.0).epsilon(1e-9));
  CHECK(v[1].get<double>() == Approx(293.0).epsilon(0.03));
  CHECK(v[2].get<double>() == Approx(396.0).epsilon(0.03));
  REQUIRE(r.summary["notes"].size() == 1);
  CHECK(r.summary["notes"][0].get<std::string>().find("12") != std::string::npos);
  CHECK(r.summary["convention"] == "full");
  CHECK(r.summary.contains("wall_time_s"));
  CHECK(slurp(r.directory / "panel_a.csv").rfind("n,n_left,probability,re,im\n", 0) == 0);
}

TEST_CASE("FIG5 preset: two trajectories with the expected final variances") {
  const auto out = scratch("fig5");
  const auto r = run(configured(Scenario::kFig5, out));
  const auto& f = r.summary["results"]["final"];
  REQUIRE(f.size() == 2);
  CHECK(f[0]["diff_variance"].get<double>() == Approx(283.0).epsilon(5.0 / 283.0));
  CHECK(f[1]["diff_variance"].get<double>() == Approx(371.0).epsilon(5.0 / 371.0));
  CHECK(slurp(r.directory / "panel_a.csv").rfind("t,n,probability\n", 0) == 0);
  CHECK(slurp(r.directory / "panel_b_observables.csv").rfind("t,diff_variance,fidelity\n", 0) == 0);
}

TEST_CASE("estimate-u: angular default and hertz option") {
  const auto out = scratch("estimate");
  auto c = configured(Scenario::kEstimateU, out);
  const auto r = run(c);
  CHECK(r.summary["results"]["u_start"].get<double>() == Approx(30.0).epsilon(0.1));
  CHECK(r.summary["results"]["u_end"].get<double>() == Approx(-3.0).epsilon(0.1));
  c.set("physical.omega_units", "hertz");
  const auto hz = run(c);
  CHECK(hz.summary["results"]["u_start"].get<double>() ==
        Approx(r.summary["results"]["u_start"].get<double>() * std::pow(2.0 * std::numbers::pi, 1.5)).epsilon(1e-12));
  c.set("physical.omega", "1000,1000");
  CHECK_THROWS_AS(run(c), ValidationError);
}

TEST_CASE("coherence scenario writes spectrum, B table and reconstruction") {
  const auto out = scratch("coherence");
  auto c = configured(Scenario::kCoherenceAnalysis, out);
  c.set("system.atoms", "6");
  c.set("ramsey.grid", "64");
  const auto r = run(c);
  for (const char* f : {"spectrum.csv", "b_table.csv", "reconstruction.csv"}) CHECK(fs::exists(r.directory / f));
  CHECK(r.summary["results"]["reconstruction_max_error"].get<double>() < 1e-8);
  c.set("ramsey.grid", "8");
  CHECK_THROWS_AS(run(c), AliasingError);
}

TEST_CASE("runs are deterministic and summaries re-ingest to the same run") {
  const auto a_dir = scratch("det_a");
  const auto b_dir = scratch("det_b");
  const auto c_dir = scratch("det_c");
  for (const auto scenario : {Scenario::kFig2, Scenario::kFig3, Scenario::kRamseySweep, Scenario::kGroundState}) {
    auto cfg = configured(scenario, a_dir);
    cfg.set("system.atoms", "6");
    cfg.set("ramsey.grid", "32");
    const auto a = run(cfg);
    cfg.set("output.dir", b_dir.string());
    const auto b = run(cfg);
    CHECK(csv_bytes(a) == csv_bytes(b));
    CHECK(!csv_bytes(a).empty());

    // Re-ingest the summary, changing only where the files go.
    ExperimentConfig again(*parse_scenario(a.summary["scenario"].get<std::string>()));
    apply_json(again, slurp(a.directory / "summary.json"), "summary.json");
    CHECK(again.values() == a.summary["parameters"].get<std::map<std::string, std::string>>());
    again.set("output.dir", c_dir.string());
    CHECK(csv_bytes(run(again)) == csv_bytes(a));
  }
}

TEST_CASE("validation and numerical failures from run") {
  const auto out = scratch("errors");
  auto c = configured(Scenario::kGroundState, out);
  c.set("system.atoms", "0");
  CHECK_THROWS_AS(run(c), ValidationError);
  c.set("system.atoms", "20");
  c.set("system.u", "-0.1");
  c.set("ground.max_iterations", "3");
  CHECK_THROWS_AS(run(c), ConvergenceFailure);
  auto r = configured(Scenario::kRamp, out);
  r.set("integrator.method", "exponential_eigen");
  CHECK_THROWS_AS(run(r), ValidationError);
}

TEST_CASE("CLI exit codes and output layout") {
  const auto out = scratch("cli");
  const std::string o = " -q -o " + out.string();
  CHECK(cli("estimate-u" + o) == 0);
  CHECK(fs::exists(out / "estimate-u" / "estimate.csv"));
  CHECK(fs::exists(out / "estimate-u" / "summary.json"));
  CHECK(cli("estimate-u --omega 10,10,1 --omega-units hertz --mass-amu 7 --scattering-length-a0 100" + o) == 0);
  CHECK(cli("preset FIG2 --set ramsey.grid=16" + o) == 0);
  CHECK(fs::exists(out / "fig2" / "fringe_N2.csv"));
  CHECK(cli("ground-state --set system.atoms=4 --convention half" + o) == 0);

  CHECK(cli("") == 2);
  CHECK(cli("bogus" + o) == 2);
  CHECK(cli("preset FIG9" + o) == 2);
  CHECK(cli("ground-state --set system.atoms=abc" + o) == 2);
  CHECK(cli("ground-state --set nokey=1" + o) == 2);
  CHECK(cli("ground-state --set system.atoms" + o) == 2);
  CHECK(cli("ground-state --convention third" + o) == 2);
  CHECK(cli("ground-state --config /nonexistent/cfg.txt" + o) == 2);
  CHECK(cli("ground-state --set system.u=-0.1 --set ground.max_iterations=3" + o) == 3);
  CHECK(cli("coherence --set system.atoms=20 --set ramsey.grid=20" + o) == 3);

  // Config files: key=value text and the summary JSON of a previous run.
  const fs::path cfg = out / "cfg.txt";
  std::ofstream(cfg) << "scenario = ramsey\n[system]\natoms = 3\n[ramsey]\ngrid = 8\n";
  CHECK(cli("run --config " + cfg.string() + o) == 0);
  CHECK(cli("ramsey --config " + cfg.string() + o) == 0);
  CHECK(cli("ramp --config " + cfg.string() + o) == 2);
  CHECK(cli("run --config " + (out / "ramsey" / "summary.json").string() + o) == 0);
}
