#pragma once

// Data-parallel sweep kernels. Every kernel has a serial reference and an
// OpenMP variant; both evaluate each index independently and write results
// in input order, so their outputs are bitwise identical.

#include <cstddef>
#include <vector>

#include "noonsim/evolve.hpp"
#include "noonsim/ramsey.hpp"

namespace noonsim::kernels {

FringeData fringe_sweep_serial(const RamseyChannel& channel, const MixedEnsemble& state,
                               const std::vector<double>& thetas, int max_moment);
FringeData fringe_sweep_omp(const RamseyChannel& channel, const MixedEnsemble& state,
                            const std::vector<double>& thetas, int max_moment);

/// Position of the dyad |n><n+m| (0 <= m <= N, 0 <= n <= N - m) in m-major order.
std::size_t dyad_index(int atoms, int n, int m);
std::size_t dyad_count(int atoms);

/// Parity response Tr[P U|n><n+m|U^dag] of every basis dyad under the Ramsey
/// channel, sampled on `thetas`. Entry dyad_index(n, m) * thetas.size() + j.
std::vector<Complex> dyad_parity_serial(const RamseyChannel& channel, const std::vector<double>& thetas);
std::vector<Complex> dyad_parity_omp(const RamseyChannel& channel, const std::vector<double>& thetas);

std::vector<FidelityPoint> ramp_sweep_serial(const RampSpec& spec, const std::vector<double>& ramp_times,
                                             const IntegratorConfig& config, const GroundStateOptions& ground);
std::vector<FidelityPoint> ramp_sweep_omp(const RampSpec& spec, const std::vector<double>& ramp_times,
                                          const IntegratorConfig& config, const GroundStateOptions& ground);

}  // namespace noonsim::kernels
