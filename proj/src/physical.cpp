#include "noonsim/physical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace noonsim::physical {

void TrapSpec::validate() const {
  for (double w : omega) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("trap frequencies must be > 0");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be > 0");
  if (!std::isfinite(scattering_length)) throw std::invalid_argument("scattering length must be finite");
}

TrapSpec rb85_cigar_trap(double scattering_length_a0) {
  return {{1000.0, 1000.0, 100.0}, scattering_length_a0 * kBohrRadius, kRb85MassAmu * kAtomicMassUnit};
}

std::array<double, 3> gaussian_widths(const TrapSpec& spec) {
  spec.validate();
  std::array<double, 3> s{};
  for (std::size_t i = 0; i < 3; ++i) s[i] = std::sqrt(kHbar / (spec.mass * spec.omega[i]));
  return s;
}

double interaction_strength(const TrapSpec& spec) {
  const auto s = gaussian_widths(spec);
  const double u0 = 4.0 * std::numbers::pi * spec.scattering_length * kHbar / spec.mass;
  // Integral of |phi|^4 for a normalised 3D Gaussian with widths s.
  const double overlap = 1.0 / (std::pow(2.0 * std::numbers::pi, 1.5) * s[0] * s[1] * s[2]);
  return u0 * overlap;
}

ParamSchedule feshbach_ramp(double a_start, double a_end, double ramp_time, const TrapSpec& spec,
                            const SystemParams& base) {
  if (!(ramp_time > 0.0)) throw std::invalid_argument("ramp_time must be > 0");
  TrapSpec at_start = spec;
  at_start.scattering_length = a_start;
  TrapSpec at_end = spec;
  at_end.scattering_length = a_end;
  return ParamSchedule::linear_u(base, interaction_strength(at_start), interaction_strength(at_end), ramp_time);
}

}  // namespace noonsim::physical
