// Serial reference kernels. Kept loop-for-loop identical to kernels_omp.cpp
// minus the pragmas; tests compare the two bitwise.

#include <cmath>
#include <stdexcept>

#include "noonsim/kernels.hpp"

namespace noonsim::kernels {

std::size_t dyad_count(int atoms) {
  const auto d = static_cast<std::size_t>(atoms) + 1;
  return d * (d + 1) / 2;
}

std::size_t dyad_index(int atoms, int n, int m) {
  if (m < 0 || m > atoms || n < 0 || n > atoms - m) throw std::out_of_range("dyad_index: (n, m) out of range");
  // Block m holds N + 1 - m dyads; blocks 0..m-1 precede it.
  const auto mm = static_cast<std::size_t>(m);
  const auto d = static_cast<std::size_t>(atoms) + 1;
  return mm * d - mm * (mm - 1) / 2 + static_cast<std::size_t>(n);
}

FringeData fringe_sweep_serial(const RamseyChannel& channel, const MixedEnsemble& state,
                               const std::vector<double>& thetas, int max_moment) {
  FringeData data;
  data.atoms = state.atoms();
  data.max_moment = max_moment;
  data.records.resize(thetas.size());
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    data.records[j] = channel.run(state, thetas[j], max_moment);
  }
  return data;
}

namespace detail {

// All dyad responses at one theta, written into column j.
void dyad_parity_column(const RamseyChannel& channel, const std::vector<double>& thetas, std::size_t j,
                        std::vector<Complex>& out) {
  const int atoms = channel.atoms();
  const auto d = static_cast<std::size_t>(atoms) + 1;
  std::vector<std::vector<Complex>> images(d);
  for (int n = 0; n <= atoms; ++n) {
    const EvolveReport r = channel.apply(FockVector::basis(atoms, n), thetas[j]);
    images[static_cast<std::size_t>(n)].assign(r.state.amplitudes().begin(), r.state.amplitudes().end());
  }
  for (int m = 0; m <= atoms; ++m) {
    for (int n = 0; n + m <= atoms; ++n) {
      const auto& a = images[static_cast<std::size_t>(n)];
      const auto& b = images[static_cast<std::size_t>(n + m)];
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < d; ++k) acc += (k % 2 == 0 ? 1.0 : -1.0) * a[k] * std::conj(b[k]);
      out[dyad_index(atoms, n, m) * thetas.size() + j] = acc;
    }
  }
}

FidelityPoint ramp_point(const RampSpec& spec, double ramp_time, const IntegratorConfig& config,
                         const GroundStateOptions& ground) {
  RampSpec s = spec;
  s.ramp_time = ramp_time;
  s.samples = 2;
  const Trajectory traj = ramp_run(s, config, ground);
  return {ramp_time, noon_fidelity(traj.final_state()), diff_variance(traj.final_state()), traj.max_norm_drift};
}

}  // namespace detail

std::vector<Complex> dyad_parity_serial(const RamseyChannel& channel, const std::vector<double>& thetas) {
  std::vector<Complex> out(dyad_count(channel.atoms()) * thetas.size());
  for (std::size_t j = 0; j < thetas.size(); ++j) detail::dyad_parity_column(channel, thetas, j, out);
  return out;
}

std::vector<FidelityPoint> ramp_sweep_serial(const RampSpec& spec, const std::vector<double>& ramp_times,
                                             const IntegratorConfig& config, const GroundStateOptions& ground) {
  std::vector<FidelityPoint> out(ramp_times.size());
  for (std::size_t i = 0; i < ramp_times.size(); ++i) out[i] = detail::ramp_point(spec, ramp_times[i], config, ground);
  return out;
}

}  // namespace noonsim::kernels
