#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "noonsim/errors.hpp"
#include "noonsim/evolve.hpp"
#include "oracle.hpp"

using namespace noonsim;
using doctest::Approx;

namespace {

const IntegratorConfig kRk{};
const IntegratorConfig kExact{IntegrationMethod::kExponentialEigen, 1e-13, 0.01};

}  // namespace

TEST_CASE("PiecewiseLinear and ParamSchedule") {
  const auto f = PiecewiseLinear::linear(0.0, 1.0, 2.0, -3.0);
  CHECK(f(-1.0) == 1.0);
  CHECK(f(1.0) == Approx(-1.0));
  CHECK(f(5.0) == -3.0);
  CHECK_THROWS_AS(PiecewiseLinear({}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinear({{1.0, 0.0}, {0.5, 1.0}}), std::invalid_argument);

  const auto s = ParamSchedule::linear_u(SystemParams::symmetric(10.0, 1.0), 1.0, -3.0, 4.0);
  CHECK_FALSE(s.time_independent());
  CHECK(s.at(2.0).u_left == Approx(-1.0));
  CHECK(s.at(2.0).u_right == Approx(-1.0));
  CHECK(s.at(2.0).kappa == 10.0);
  CHECK(ParamSchedule::constant(SystemParams::symmetric(1.0, 0.0), 1.0).time_independent());
  CHECK_THROWS_AS(ParamSchedule::constant(SystemParams::symmetric(1.0, 0.0), -1.0).validate(), std::invalid_argument);
}

TEST_CASE("real_evolve examples") {
  SUBCASE("diagonal Hamiltonian shifts relative phases by n dE dt") {
    std::mt19937_64 rng(1);
    const auto in = oracle::random_state(8, rng);
    SystemParams p;
    p.e_left = 0.3;
    p.e_right = 1.1;
    const double dt = 0.7;
    const double de = p.e_right - p.e_left;
    for (const auto& cfg : {kRk, kExact}) {
      const auto out = real_evolve(in, ParamSchedule::constant(p, dt), cfg);
      // Remove the global phase using n = 0.
      const Complex g = out[0] / in[0];
      for (std::size_t n = 0; n < in.dimension(); ++n) {
        CHECK(std::abs(out[n]) == Approx(std::abs(in[n])).epsilon(1e-10));
        const Complex expected = in[n] * g * std::polar(1.0, -static_cast<double>(n) * de * dt);
        CHECK(std::abs(out[n] - expected) < 1e-9);
      }
    }
  }
  SUBCASE("single atom Rabi oscillation") {
    const double kappa = 2.0;
    for (double t : {0.1, 0.5, 1.3}) {
      const auto out = real_evolve(FockVector::basis(1, 0), ParamSchedule::constant(SystemParams::symmetric(kappa, 0.0), t), kRk);
      CHECK(std::norm(out[0]) == Approx(std::pow(std::cos(kappa * t), 2)).epsilon(1e-10));
    }
  }
  SUBCASE("forward then backward recovers a NOON state") {
    const double kappa = 10.0;
    const double t = std::numbers::pi / (4.0 * kappa);
    const auto in = make_noon(20, 0.0);
    const auto mid = real_evolve(in, ParamSchedule::constant(SystemParams::symmetric(kappa, 0.0), t), kRk);
    const auto back = real_evolve(mid, ParamSchedule::constant(SystemParams::symmetric(-kappa, 0.0), t), kRk);
    CHECK(fidelity(in, back) > 1.0 - 1e-9);
  }
}

TEST_CASE("real_evolve rejects time-dependent schedules under the exact method") {
  const auto s = ParamSchedule::linear_u(SystemParams::symmetric(10.0, 1.0), 1.0, -3.0, 1.0);
  CHECK_THROWS_AS(real_evolve(make_noon(4, 0.0), s, kExact), std::invalid_argument);
  IntegratorConfig bad;
  bad.max_step = 0.0;
  CHECK_THROWS_AS(real_evolve(make_noon(4, 0.0), s, bad), std::invalid_argument);
}

TEST_CASE("loose RK tolerance surfaces as an integration failure") {
  IntegratorConfig loose;
  loose.step_tolerance = 1e-1;
  loose.max_step = 10.0;
  const auto s = ParamSchedule::constant(SystemParams::symmetric(10.0, -1.0), 10.0);
  CHECK_THROWS_AS(real_evolve(make_noon(20, 0.0), s, loose), IntegrationFailure);
}

TEST_CASE("ground state examples") {
  SUBCASE("U = 0 gives the binomial state") {
    const auto g = ground_state_report(SystemParams::symmetric(1.0, 0.0), 20, {});
    CHECK(diff_variance(g.state) == Approx(20.0).epsilon(1e-9));
    CHECK(g.energy == Approx(-20.0).epsilon(1e-12));
  }
  SUBCASE("attractive interactions, full convention") {
    const auto b = ground_state(SystemParams::symmetric(1.0, -0.1), 20);
    const auto c = ground_state(SystemParams::symmetric(1.0, -0.5), 20);
    CHECK(diff_variance(b) == Approx(293.0).epsilon(0.03));
    CHECK(diff_variance(c) == Approx(396.0).epsilon(0.03));
    // Two separated peaks at the edges for strong attraction.
    const auto p = c.probabilities();
    CHECK(p[0] > 0.4);
    CHECK(p[20] > 0.4);
    CHECK(p[10] < 1e-6);
  }
  SUBCASE("ground state agrees with the eigendecomposition") {
    for (double u : {0.5, 0.0, -0.05, -0.2}) {
      const SystemParams p = SystemParams::symmetric(1.0, u);
      const auto g = ground_state_report(p, 16, {});
      const SpectralPropagator sp(hamiltonian_matrix(p, 16));
      CHECK(g.energy == Approx(sp.eigenvalues()(0)).epsilon(1e-10));
      double captured = 0.0;
      for (const auto& v : sp.ground_space(1e-6)) captured += fidelity(v, g.state);
      CHECK(captured > 1.0 - 1e-9);
    }
  }
  SUBCASE("iteration cap raises ConvergenceFailure") {
    GroundStateOptions o;
    o.max_iterations = 3;
    CHECK_THROWS_AS(ground_state_report(SystemParams::symmetric(1.0, -0.1), 20, o), ConvergenceFailure);
  }
  SUBCASE("negative tunnelling is rejected by the imaginary-time solver") {
    CHECK_THROWS_AS(ground_state(SystemParams::symmetric(-1.0, 0.0), 4), std::invalid_argument);
  }
  SUBCASE("recorded energies never increase") {
    GroundStateOptions o;
    o.record_energies = true;
    const auto g = ground_state_report(SystemParams::symmetric(1.0, -0.3), 12, o);
    REQUIRE(g.energies.size() > 2);
    for (std::size_t i = 1; i < g.energies.size(); ++i) CHECK(g.energies[i] <= g.energies[i - 1] + 1e-12);
  }
}

TEST_CASE("ramp examples") {
  RampSpec spec;  // N = 20, kappa = 10, U 1 -> -3
  SUBCASE("0.5 s and 4 s ramps") {
    spec.ramp_time = 0.5;
    const auto start = std::chrono::steady_clock::now();
    const auto fast = ramp_run(spec, kRk);
    spec.ramp_time = 4.0;
    const auto slow = ramp_run(spec, kRk);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(diff_variance(fast.final_state()) == Approx(283.0).epsilon(5.0 / 283.0));
    CHECK(diff_variance(slow.final_state()) == Approx(371.0).epsilon(5.0 / 371.0));
    CHECK(fast.max_norm_drift < 1e-9);
    CHECK(slow.max_norm_drift < 1e-9);
    CHECK(noon_fidelity(slow.final_state()) > noon_fidelity(fast.final_state()));
    CHECK(seconds < 60.0);
    CHECK(fast.times.size() == kDefaultTrajectorySamples);
    CHECK(fast.times.front() == 0.0);
    CHECK(fast.times.back() == 0.5);
  }
  SUBCASE("sudden limit keeps the initial ground state") {
    spec.ramp_time = 1e-3;
    spec.samples = 2;
    const auto t = ramp_run(spec, kRk);
    CHECK(fidelity(t.states.front(), t.final_state()) > 0.999);
  }
  SUBCASE("invalid ramps") {
    spec.ramp_time = 0.0;
    CHECK_THROWS_AS(ramp_run(spec, kRk), std::invalid_argument);
    spec.ramp_time = 1.0;
    CHECK_THROWS_AS(ramp_run(spec, kExact), std::invalid_argument);
    spec.samples = 1;
    CHECK_THROWS_AS(ramp_run(spec, kRk), std::invalid_argument);
  }
}

TEST_CASE("NOON fidelity maximised over the phase") {
  const auto s = make_noon(6, 0.9);
  CHECK(noon_fidelity(s) == Approx(1.0));
  CHECK(fidelity(make_noon(6, best_noon_phase(s)), s) == Approx(1.0));
  // Brute-force maximum over phi agrees with the closed form.
  std::mt19937_64 rng(4);
  const auto r = oracle::random_state(6, rng);
  double best = 0.0;
  for (int j = 0; j < 20000; ++j) best = std::max(best, fidelity(make_noon(6, 2.0 * std::numbers::pi * j / 20000.0), r));
  CHECK(noon_fidelity(r) == Approx(best).epsilon(1e-6));
}

TEST_CASE("fidelity sweep: slow ramps approach the ground-state reference from below") {
  RampSpec spec;
  const auto sweep = fidelity_vs_ramp(spec, {0.5, 4.0, 8.0}, kRk);
  REQUIRE(sweep.points.size() == 3);
  CHECK(sweep.reference_fidelity == Approx(0.8566).epsilon(1e-3));
  CHECK(sweep.points[1].fidelity > sweep.points[0].fidelity);
  CHECK(sweep.points[2].fidelity > sweep.points[1].fidelity);
  for (const auto& p : sweep.points) {
    CHECK(p.fidelity <= sweep.reference_fidelity);
    CHECK(p.norm_drift < 1e-9);
  }
  CHECK(sweep.points[2].fidelity > 0.9 * sweep.reference_fidelity);
}

// ---- properties --------------------------------------------------------------

TEST_CASE("property: RK propagation matches the eigendecomposition oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const int atoms = 1 + static_cast<int>(rng() % 30);
    SystemParams p{5.0 + 5.0 * std::abs(u(rng)), u(rng), u(rng), u(rng), u(rng), InteractionConvention::kFull};
    const double t = 10.0 * std::abs(u(rng));
    const auto in = oracle::random_state(atoms, rng);
    const auto report = real_evolve_report(in, ParamSchedule::constant(p, t), kRk);
    const auto exact = propagate_exact(in, p, t);
    CHECK(fidelity(report.state, exact) > 1.0 - 1e-9);
    CHECK(report.norm_drift < 1e-9);
    // The Pade exponential is a third, independent route.
    const oracle::Vector pade = oracle::propagator(oracle::hamiltonian(atoms, p), t) * oracle::to_vector(in);
    CHECK(oracle::overlap(pade, oracle::to_vector(exact)) > 1.0 - 1e-9);
  }
}

TEST_CASE("property: time reversal recovers the input") {
  std::mt19937_64 rng(22);
  for (int atoms : {3, 10, 20}) {
    const auto in = oracle::random_state(atoms, rng);
    SystemParams p = SystemParams::symmetric(4.0, -0.3);
    const auto fwd = real_evolve(in, ParamSchedule::constant(p, 1.5), kRk);
    SystemParams neg = p;
    neg.kappa = -p.kappa;
    neg.u_left = neg.u_right = -p.u_left;
    CHECK(fidelity(in, real_evolve(fwd, ParamSchedule::constant(neg, 1.5), kRk)) > 1.0 - 1e-8);
  }
}

TEST_CASE("property: symmetric-well ground states are reflection symmetric") {
  for (double u : {0.4, 0.0, -0.08, -0.5}) {
    for (int atoms : {5, 12, 20}) {
      const auto g = ground_state(SystemParams::symmetric(1.0, u), atoms);
      for (std::size_t n = 0; n < g.dimension(); ++n) {
        CHECK(std::abs(std::abs(g[n]) - std::abs(g[g.dimension() - 1 - n])) < 1e-8);
      }
    }
  }
}

TEST_CASE("property: unit norm is preserved over long evolution") {
  const auto report = real_evolve_report(make_noon(30, 0.1),
                                         ParamSchedule::constant(SystemParams::symmetric(10.0, -1.0), 10.0), kRk);
  CHECK(report.norm_drift < 1e-9);
}
