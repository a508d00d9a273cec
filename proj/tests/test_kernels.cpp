#include <doctest.h>

#include <cstring>
#include <random>

#include "noonsim/kernels.hpp"
#include "oracle.hpp"

using namespace noonsim;

namespace {

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("dyad indexing is a bijection onto 0..count-1") {
  for (int atoms : {0, 1, 5, 20}) {
    std::vector<int> seen(kernels::dyad_count(atoms), 0);
    for (int m = 0; m <= atoms; ++m) {
      for (int n = 0; n + m <= atoms; ++n) ++seen.at(kernels::dyad_index(atoms, n, m));
    }
    for (int s : seen) CHECK(s == 1);
  }
}

TEST_CASE("fringe sweep: OpenMP and serial kernels agree bitwise") {
  std::mt19937_64 rng(9);
  RamseyConfig cfg;
  cfg.u_interference = -0.1;
  const RamseyChannel channel(10, cfg);
  const auto state = oracle::random_ensemble(10, 3, rng);
  const auto grid = uniform_theta_grid(97);
  const auto a = kernels::fringe_sweep_serial(channel, state, grid, 3);
  const auto b = kernels::fringe_sweep_omp(channel, state, grid, 3);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t j = 0; j < a.records.size(); ++j) {
    CHECK(bitwise_equal(a.records[j].theta, b.records[j].theta));
    CHECK(bitwise_equal(a.records[j].parity, b.records[j].parity));
    for (std::size_t k = 0; k < a.records[j].moments.size(); ++k) {
      CHECK(bitwise_equal(a.records[j].moments[k], b.records[j].moments[k]));
    }
    for (std::size_t n = 0; n < a.records[j].distribution.size(); ++n) {
      CHECK(bitwise_equal(a.records[j].distribution[n], b.records[j].distribution[n]));
    }
  }
}

TEST_CASE("dyad parity: OpenMP and serial kernels agree bitwise") {
  const RamseyChannel channel(6, RamseyConfig{});
  const auto grid = uniform_theta_grid(28);
  const auto a = kernels::dyad_parity_serial(channel, grid);
  const auto b = kernels::dyad_parity_omp(channel, grid);
  REQUIRE(a.size() == kernels::dyad_count(6) * grid.size());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(bitwise_equal(a[i].real(), b[i].real()));
    CHECK(bitwise_equal(a[i].imag(), b[i].imag()));
  }
}

TEST_CASE("dyad parity of a diagonal dyad is the basis-state parity") {
  RamseyConfig cfg;
  const RamseyChannel channel(4, cfg);
  const auto grid = uniform_theta_grid(10);
  const auto r = kernels::dyad_parity_serial(channel, grid);
  for (int n = 0; n <= 4; ++n) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double p = ramsey_run(FockVector::basis(4, n), grid[j], cfg).parity;
      CHECK(std::abs(r[kernels::dyad_index(4, n, 0) * grid.size() + j] - p) < 1e-13);
    }
  }
}

TEST_CASE("ramp sweep: OpenMP and serial kernels agree bitwise") {
  RampSpec spec;
  spec.atoms = 8;
  const std::vector<double> times{0.1, 0.3, 0.2};
  const auto a = kernels::ramp_sweep_serial(spec, times, IntegratorConfig{}, {});
  const auto b = kernels::ramp_sweep_omp(spec, times, IntegratorConfig{}, {});
  REQUIRE(a.size() == 3);
  REQUIRE(b.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ramp_time == times[i]);
    CHECK(bitwise_equal(a[i].fidelity, b[i].fidelity));
    CHECK(bitwise_equal(a[i].diff_variance, b[i].diff_variance));
    CHECK(bitwise_equal(a[i].norm_drift, b[i].norm_drift));
  }
}

TEST_CASE("kernel errors propagate out of parallel regions") {
  RampSpec spec;
  spec.atoms = 4;
  CHECK_THROWS_AS(kernels::ramp_sweep_omp(spec, {0.1, -1.0, 0.2}, IntegratorConfig{}, {}), std::invalid_argument);
  CHECK_THROWS_AS(kernels::ramp_sweep_serial(spec, {0.1, -1.0}, IntegratorConfig{}, {}), std::invalid_argument);
}
