#include "noonsim/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "noonsim/csv.hpp"
#include "noonsim/errors.hpp"
#include "noonsim/kernels.hpp"

namespace noonsim {

namespace {

void require_uniform(const std::vector<double>& thetas) {
  const auto m = static_cast<double>(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const double expected = 2.0 * std::numbers::pi * static_cast<double>(k) / m;
    if (std::abs(thetas[k] - expected) > 1e-12) {
      throw std::invalid_argument("parity_fourier needs the uniform grid k * 2 pi / M over [0, 2 pi)");
    }
  }
}

// (1/M) sum_j x_j e^{-i m theta_j} on the uniform grid.
Complex dft_bin(const std::vector<double>& x, std::size_t m) {
  const std::size_t size = x.size();
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < size; ++j) {
    // Reduce m*j mod M first so the phase argument stays exact.
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((m * j) % size) / static_cast<double>(size);
    acc += x[j] * std::polar(1.0, -angle);
  }
  return acc / static_cast<double>(size);
}

}  // namespace

// ---- spectrum --------------------------------------------------------------

double CoherenceSpectrum::power_fraction(int m) const {
  if (m < 1 || m > atoms) throw std::out_of_range("power_fraction: m outside 1..N");
  return non_dc_power > 0.0 ? std::norm(fourier[static_cast<std::size_t>(m)]) / non_dc_power : 0.0;
}

void CoherenceSpectrum::write_csv(std::ostream& out) const {
  CsvWriter csv(out);
  csv.header({"m", "fourier_re", "fourier_im", "coherence_re", "coherence_im"});
  for (int m = 0; m <= atoms; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const Complex s = i < coherence.size() ? coherence[i] : Complex{};
    csv.row({static_cast<double>(m), fourier[i].real(), fourier[i].imag(), s.real(), s.imag()});
  }
}

CoherenceSpectrum parity_fourier(const FringeData& fringe) {
  const auto thetas = fringe.thetas();
  const std::size_t size = thetas.size();
  if (size < 2 * static_cast<std::size_t>(fringe.atoms) + 2) {
    throw AliasingError("theta grid of " + std::to_string(size) + " points cannot resolve frequency " +
                        std::to_string(fringe.atoms) + "; need at least 2N + 2");
  }
  require_uniform(thetas);
  const auto p = fringe.parities();

  CoherenceSpectrum s;
  s.atoms = fringe.atoms;
  s.grid_points = size;
  s.fourier.resize(static_cast<std::size_t>(fringe.atoms) + 1);
  for (std::size_t m = 0; m <= size / 2; ++m) {
    const Complex f = dft_bin(p, m);
    if (m < s.fourier.size()) s.fourier[m] = f;
    if (m > 0) s.non_dc_power += std::norm(f);
    if (m > static_cast<std::size_t>(fringe.atoms)) s.high_band_max = std::max(s.high_band_max, std::abs(f));
  }
  return s;
}

std::vector<Complex> coherence_sums(const FockVector& state) { return coherence_sums(MixedEnsemble::pure(state)); }

std::vector<Complex> coherence_sums(const MixedEnsemble& state) {
  const int atoms = state.atoms();
  std::vector<Complex> s(static_cast<std::size_t>(atoms) + 1);
  for (const auto& [w, psi] : state.components()) {
    for (int m = 0; m <= atoms; ++m) {
      Complex acc{0.0, 0.0};
      for (int n = 0; n + m <= atoms; ++n) {
        acc += psi[static_cast<std::size_t>(n)] * std::conj(psi[static_cast<std::size_t>(n + m)]);
      }
      s[static_cast<std::size_t>(m)] += w * acc;
    }
  }
  return s;
}

CoherenceSpectrum analyze_coherence(const MixedEnsemble& state, const RamseyConfig& config,
                                    std::size_t grid_points) {
  const FringeData fringe = fringe_sweep(state, uniform_theta_grid(grid_points), config, 2);
  CoherenceSpectrum s = parity_fourier(fringe);
  s.coherence = coherence_sums(state);
  return s;
}

// ---- B calibration ---------------------------------------------------------

BTable::BTable(int atoms, int phase_sign, std::vector<Complex> values, double max_fit_residual)
    : atoms_(atoms), phase_sign_(phase_sign), values_(std::move(values)), max_fit_residual_(max_fit_residual) {
  if (values_.size() != kernels::dyad_count(atoms)) throw std::invalid_argument("BTable: wrong number of entries");
}

Complex BTable::operator()(int n, int m) const { return values_[kernels::dyad_index(atoms_, n, m)]; }

double BTable::max_imag() const {
  double worst = 0.0;
  for (const auto& v : values_) worst = std::max(worst, std::abs(v.imag()));
  return worst;
}

void BTable::write_csv(std::ostream& out) const {
  CsvWriter csv(out);
  csv.header({"n", "m", "b_re", "b_im"});
  for (int m = 0; m <= atoms_; ++m) {
    for (int n = 0; n + m <= atoms_; ++n) {
      const Complex b = (*this)(n, m);
      csv.row({static_cast<double>(n), static_cast<double>(m), b.real(), b.imag()});
    }
  }
}

BTable calibrate_B(int atoms, const RamseyConfig& config, std::size_t grid_points) {
  if (config.u_interference != 0.0) {
    throw std::invalid_argument("B calibration is defined for the linear channel (u_interference = 0)");
  }
  const std::size_t size = grid_points == 0 ? 4 * (static_cast<std::size_t>(atoms) + 1) : grid_points;
  if (size < 2 * static_cast<std::size_t>(atoms) + 2) {
    throw AliasingError("calibration grid too coarse for N = " + std::to_string(atoms));
  }
  const RamseyChannel channel(atoms, config);
  const auto thetas = uniform_theta_grid(size);
  const auto response = kernels::dyad_parity_omp(channel, thetas);
  const int sign = config.phase_sign();

  std::vector<Complex> values(kernels::dyad_count(atoms));
  double worst = 0.0;
  for (int m = 0; m <= atoms; ++m) {
    for (int n = 0; n + m <= atoms; ++n) {
      const std::size_t dyad = kernels::dyad_index(atoms, n, m);
      const Complex* r = response.data() + dyad * size;
      // Project onto e^{i sign m theta}, then check nothing else is left.
      Complex b{0.0, 0.0};
      for (std::size_t j = 0; j < size; ++j) b += r[j] * std::polar(1.0, -sign * m * thetas[j]);
      b /= static_cast<double>(size);
      for (std::size_t j = 0; j < size; ++j) {
        worst = std::max(worst, std::abs(r[j] - b * std::polar(1.0, sign * m * thetas[j])));
      }
      values[dyad] = b;
    }
  }
  if (worst > kCalibrationTolerance) {
    throw CalibrationFailure("dyad parity response is not single-frequency; residual " + std::to_string(worst));
  }
  return BTable(atoms, sign, std::move(values), worst);
}

std::vector<double> reconstruct_parity(const BTable& table, const MixedEnsemble& state,
                                       const std::vector<double>& thetas) {
  const int atoms = table.atoms();
  if (state.atoms() != atoms) throw std::invalid_argument("reconstruct_parity: atom number mismatch");

  double diagonal = 0.0;
  for (int n = 0; n <= atoms; ++n) diagonal += table(n, 0).real() * state.density_element(n, n).real();
  // Per-frequency weight W_m = sum_n B[n,m] rho[n,n+m].
  std::vector<Complex> weight(static_cast<std::size_t>(atoms) + 1);
  for (int m = 1; m <= atoms; ++m) {
    for (int n = 0; n + m <= atoms; ++n) {
      weight[static_cast<std::size_t>(m)] += table(n, m) * state.density_element(n, n + m);
    }
  }
  std::vector<double> p(thetas.size(), diagonal);
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    for (int m = 1; m <= atoms; ++m) {
      p[j] += 2.0 * std::real(weight[static_cast<std::size_t>(m)] *
                              std::polar(1.0, table.phase_sign() * m * thetas[j]));
    }
  }
  return p;
}

DecompositionReport verify_decomposition(const MixedEnsemble& state, const RamseyConfig& config,
                                         std::size_t grid_points, double threshold) {
  if (config.u_interference != 0.0) {
    throw std::invalid_argument("decomposition check needs u_interference = 0");
  }
  DecompositionReport report;
  report.thetas = uniform_theta_grid(grid_points);
  report.simulated = fringe_sweep(state, report.thetas, config, 1).parities();
  report.reconstructed = reconstruct_parity(calibrate_B(state.atoms(), config), state, report.thetas);
  for (std::size_t j = 0; j < report.thetas.size(); ++j) {
    report.max_error = std::max(report.max_error, std::abs(report.simulated[j] - report.reconstructed[j]));
  }
  if (!(report.max_error <= threshold)) {
    throw DecompositionViolation("parity reconstruction error " + std::to_string(report.max_error) +
                                     " exceeds " + std::to_string(threshold),
                                 report.max_error);
  }
  return report;
}

}  // namespace noonsim
