#include <doctest.h>

#include <cmath>
#include <numbers>

#include "noonsim/physical.hpp"

using namespace noonsim;
using namespace noonsim::physical;
using doctest::Approx;

namespace {

TrapSpec trap(double a_a0, double w = 1000.0) {
  TrapSpec s;
  s.omega = {w, w, w / 10.0};
  s.scattering_length = a_a0 * kBohrRadius;
  s.mass = kRb85MassAmu * kAtomicMassUnit;
  return s;
}

// Closed form written out independently: U = 4 pi hbar a / m * (2 pi)^{-3/2} / (sx sy sz).
double closed_form(const TrapSpec& s) {
  double prod = 1.0;
  for (double w : s.omega) prod *= std::sqrt(kHbar / (s.mass * w));
  return 4.0 * std::numbers::pi * kHbar * s.scattering_length / s.mass / std::pow(2.0 * std::numbers::pi, 1.5) / prod;
}

}  // namespace

TEST_CASE("gaussian width examples") {
  TrapSpec unit;
  unit.mass = 2.0;
  unit.omega = {kHbar / 2.0, kHbar / 2.0, kHbar / 2.0};
  CHECK(gaussian_widths(unit)[0] == Approx(1.0).epsilon(1e-12));

  CHECK(gaussian_widths(trap(0.0))[0] == Approx(8.6e-7).epsilon(0.01));
  const double sigma = gaussian_widths(trap(0.0, 1000.0))[0];
  CHECK(gaussian_widths(trap(0.0, 4000.0))[0] == Approx(sigma / 2.0).epsilon(1e-12));
}

TEST_CASE("interaction strength examples") {
  const double u_start = interaction_strength(rb85_cigar_trap(2000.0));
  const double u_end = interaction_strength(rb85_cigar_trap(-200.0));
  CHECK(u_start == Approx(30.0).epsilon(0.10));
  CHECK(u_end == Approx(-3.0).epsilon(0.10));
  CHECK(u_start == Approx(closed_form(rb85_cigar_trap(2000.0))).epsilon(1e-12));
  CHECK(interaction_strength(rb85_cigar_trap(0.0)) == 0.0);
}

TEST_CASE("trap validation") {
  TrapSpec s = trap(100.0);
  s.mass = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = trap(100.0);
  s.omega[2] = -1.0;
  CHECK_THROWS_AS(interaction_strength(s), std::invalid_argument);
}

TEST_CASE("feshbach ramp examples") {
  const TrapSpec s = rb85_cigar_trap(0.0);
  const auto flat = feshbach_ramp(500.0 * kBohrRadius, 500.0 * kBohrRadius, 2.0, s, SystemParams::symmetric(10.0, 0.0));
  CHECK(flat.at(0.0).u_left == Approx(flat.at(2.0).u_left).epsilon(1e-15));
  const auto ramp = feshbach_ramp(2000.0 * kBohrRadius, -200.0 * kBohrRadius, 4.0, s, SystemParams::symmetric(10.0, 0.0));
  CHECK(ramp.at(0.0).u_left == Approx(30.0).epsilon(0.10));
  CHECK(ramp.at(4.0).u_right == Approx(-3.0).epsilon(0.10));
  CHECK(ramp.at(2.0).kappa == 10.0);
}

TEST_CASE("property: linear in a, sign follows a, square-root scaling in each omega") {
  const double base = interaction_strength(trap(1.0));
  for (double a : {-500.0, -3.0, 7.0, 1234.0}) {
    const double u = interaction_strength(trap(a));
    CHECK(u == Approx(a * base).epsilon(1e-12));
    CHECK(std::signbit(u) == std::signbit(a));
  }
  for (int axis = 0; axis < 3; ++axis) {
    TrapSpec s = trap(100.0);
    const double u0 = interaction_strength(s);
    s.omega[static_cast<std::size_t>(axis)] *= 2.0;
    CHECK(interaction_strength(s) == Approx(u0 * std::sqrt(2.0)).epsilon(1e-12));
  }
}
