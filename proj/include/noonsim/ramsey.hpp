#pragma once

// Virtual Ramsey interferometer: diagonal phase stage, tunnelling beam
// splitter for pi/(4 kappa), then number counting.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "noonsim/evolve.hpp"
#include "noonsim/fock.hpp"

namespace noonsim {

/// Which well accrues the phase theta during the phase stage.
enum class PhaseWell { kRight, kLeft };

struct RamseyConfig {
  double kappa_bs = 10.0;
  double u_interference = 0.0;
  std::optional<double> bs_duration;  // defaults to pi / (4 kappa_bs)
  PhaseWell phase_well = PhaseWell::kRight;
  InteractionConvention convention = InteractionConvention::kFull;
  // The beam-splitter Hamiltonian is constant, so the exact propagator is the
  // default; kAdaptiveRK runs the RK integrator for every theta instead.
  IntegratorConfig integrator{IntegrationMethod::kExponentialEigen, 1e-12, 0.01};

  double duration() const;
  SystemParams beam_splitter_params() const;
  void validate() const;
  /// +1 when the right well accrues phase, -1 for the left well.
  int phase_sign() const noexcept { return phase_well == PhaseWell::kRight ? 1 : -1; }
};

/// Offset between the protocol angle and the quadrature-operator angle
/// introduced by the tunnelling beam splitter. ramsey_run compensates for it so
/// that the output moments of N_L - N_R equal <X_theta^k> (right-well phase) or
/// <X_{-theta}^k> (left-well phase).
inline constexpr double kBeamSplitterPhaseOffset = 1.5707963267948966;

/// c_n -> c_n e^{-i n theta} (right well) or c_n e^{-i (N-n) theta} (left well).
FockVector phase_stage(const FockVector& state, double theta, PhaseWell well = PhaseWell::kRight);

struct RamseyRecord {
  double theta = 0.0;
  std::vector<double> distribution;  // |c_n|^2 after the beam splitter
  std::vector<double> moments;       // moments[k] = <(N - 2n)^k>, k = 0..max_moment
  double mean_diff = 0.0;
  double var_diff = 0.0;
  double parity = 0.0;
  double norm_drift = 0.0;
};

/// Builds a record from an output distribution.
RamseyRecord make_record(double theta, std::vector<double> distribution, int max_moment, double norm_drift = 0.0);

/// Phase stage then beam splitter; distribution, moments and parity of the result.
/// Ensembles evolve component-wise and average their distributions.
RamseyRecord ramsey_run(const FockVector& state, double theta, const RamseyConfig& config, int max_moment = 2);
RamseyRecord ramsey_run(const MixedEnsemble& state, double theta, const RamseyConfig& config, int max_moment = 2);

/// The Ramsey map theta -> output amplitudes for a fixed configuration. The
/// beam-splitter propagator is factorised once and reused for every theta.
class RamseyChannel {
 public:
  RamseyChannel(int atoms, const RamseyConfig& config);

  int atoms() const noexcept { return atoms_; }
  const RamseyConfig& config() const noexcept { return config_; }

  /// Output amplitudes (unnormalised only within the reported drift).
  EvolveReport apply(const FockVector& state, double theta) const;
  RamseyRecord run(const MixedEnsemble& state, double theta, int max_moment) const;

 private:
  int atoms_;
  RamseyConfig config_;
  std::optional<SpectralPropagator> exact_;
};

inline constexpr std::size_t kDefaultThetaPoints = 512;

/// M uniform points k * 2 pi / M, k = 0..M-1.
std::vector<double> uniform_theta_grid(std::size_t points = kDefaultThetaPoints);

struct FringeData {
  int atoms = 0;
  int max_moment = 0;
  std::vector<RamseyRecord> records;  // ordered as the input theta grid

  std::vector<double> thetas() const;
  std::vector<double> parities() const;
  std::vector<double> mean_diffs() const;
  std::vector<double> var_diffs() const;

  /// Columns theta, mean_diff, var_diff, parity[, p_0..p_N].
  void write_csv(std::ostream& out, bool with_distribution) const;
};

FringeData fringe_sweep(const FockVector& state, const std::vector<double>& theta_grid, const RamseyConfig& config,
                        int max_moment = 2);
FringeData fringe_sweep(const MixedEnsemble& state, const std::vector<double>& theta_grid,
                        const RamseyConfig& config, int max_moment = 2);

}  // namespace noonsim
