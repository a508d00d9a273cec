#pragma once

// Trap and atom parameters -> effective two-mode interaction strength, using a
// Gaussian (harmonic-oscillator ground state) mode function.

#include <array>

#include "noonsim/evolve.hpp"

namespace noonsim::physical {

// CODATA 2018.
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kBohrRadius = 5.291772109e-11;    // m
inline constexpr double kAtomicMassUnit = 1.660539067e-27;  // kg
inline constexpr double kRb85MassAmu = 84.91178974;

struct TrapSpec {
  std::array<double, 3> omega{};  // rad/s
  double scattering_length = 0.0;  // m, may be negative
  double mass = 0.0;               // kg

  void validate() const;
};

/// The cigar trap of the Feshbach-ramp estimate: Rb-85, omega = (1000, 1000, 100) rad/s.
TrapSpec rb85_cigar_trap(double scattering_length_a0);

/// sigma_i = sqrt(hbar / (m omega_i)).
std::array<double, 3> gaussian_widths(const TrapSpec& spec);

/// U = (4 pi a hbar / m) * (2 pi)^{-3/2} / (sigma_x sigma_y sigma_z), in rad/s.
double interaction_strength(const TrapSpec& spec);

/// Linear a(t) from a_start to a_end (metres) mapped to a linear U(t)
/// schedule over ramp_time. `base` supplies kappa, E and the convention.
ParamSchedule feshbach_ramp(double a_start, double a_end, double ramp_time, const TrapSpec& spec,
                            const SystemParams& base = {});

}  // namespace noonsim::physical
