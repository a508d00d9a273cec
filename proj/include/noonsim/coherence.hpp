#pragma once

// Parity-fringe frequency analysis and its link to Fock-space coherences.
//
// With no interaction during the beam splitter the Ramsey channel is linear
// in rho, so the parity fringe decomposes as
//
//   P(theta) = sum_n B[n,0] rho[n,n]
//            + sum_{m>0} sum_n ( B[n,m] e^{i m theta} rho[n,n+m] + c.c. )
//
// where rho[i,j] = <N-i,i| rho |N-j,j>. Frequency m in theta therefore only
// sees coherences between Fock states m atoms apart; frequency N only sees
// <N,0|rho|0,N>. B is calibrated numerically by pushing each basis dyad
// |n><n+m| through the channel.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "noonsim/fock.hpp"
#include "noonsim/ramsey.hpp"

namespace noonsim {

struct CoherenceSpectrum {
  int atoms = 0;
  std::size_t grid_points = 0;
  /// F_m for m = 0..N, normalised so P(theta) = F_0 + sum_{m>0} (F_m e^{i m theta} + c.c.).
  std::vector<Complex> fourier;
  /// S_m = sum_n rho[n, n+m] for m = 0..N; empty unless filled by coherence_sums.
  std::vector<Complex> coherence;
  /// sum of |F_m|^2 over 0 < m <= M/2.
  double non_dc_power = 0.0;
  /// max |F_m| over N < m <= M/2. Zero up to rounding for a linear channel.
  double high_band_max = 0.0;

  /// |F_m|^2 / non_dc_power.
  double power_fraction(int m) const;
  /// Columns m, fourier_re, fourier_im, coherence_re, coherence_im.
  void write_csv(std::ostream& out) const;
};

/// DFT of the parity over a uniform theta grid covering one period.
/// Throws AliasingError when the grid has fewer than 2N + 2 points and
/// std::invalid_argument when it is not the uniform grid k 2 pi / M.
CoherenceSpectrum parity_fourier(const FringeData& fringe);

/// S_m for m = 0..N.
std::vector<Complex> coherence_sums(const FockVector& state);
std::vector<Complex> coherence_sums(const MixedEnsemble& state);

/// Spectrum of the parity fringe with the coherence side filled in.
CoherenceSpectrum analyze_coherence(const MixedEnsemble& state, const RamseyConfig& config,
                                    std::size_t grid_points = kDefaultThetaPoints);

class BTable {
 public:
  BTable(int atoms, int phase_sign, std::vector<Complex> values, double max_fit_residual);

  int atoms() const noexcept { return atoms_; }
  /// +1: the channel oscillates as e^{i m theta}; -1 (left-well phase): e^{-i m theta}.
  int phase_sign() const noexcept { return phase_sign_; }
  Complex operator()(int n, int m) const;
  double max_imag() const;
  double max_fit_residual() const noexcept { return max_fit_residual_; }

  /// Columns n, m, b_re, b_im.
  void write_csv(std::ostream& out) const;

 private:
  int atoms_;
  int phase_sign_;
  std::vector<Complex> values_;  // kernels::dyad_index order
  double max_fit_residual_;
};

inline constexpr double kCalibrationTolerance = 1e-8;

/// Requires config.u_interference == 0. `grid_points` = 0 picks 4(N+1).
/// Throws CalibrationFailure if any dyad response deviates from a single
/// frequency by more than kCalibrationTolerance.
BTable calibrate_B(int atoms, const RamseyConfig& config, std::size_t grid_points = 0);

/// Parity fringe predicted from B and the density-matrix elements of `state`.
std::vector<double> reconstruct_parity(const BTable& table, const MixedEnsemble& state,
                                       const std::vector<double>& thetas);

struct DecompositionReport {
  double max_error = 0.0;
  std::vector<double> thetas;
  std::vector<double> simulated;
  std::vector<double> reconstructed;
};

inline constexpr double kDecompositionTolerance = 1e-8;

/// Simulates the parity fringe and compares it with reconstruct_parity.
/// Throws DecompositionViolation when max_error exceeds `threshold`.
DecompositionReport verify_decomposition(const MixedEnsemble& state, const RamseyConfig& config,
                                         std::size_t grid_points = kDefaultThetaPoints,
                                         double threshold = kDecompositionTolerance);

}  // namespace noonsim
