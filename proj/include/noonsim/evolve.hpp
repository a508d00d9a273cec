#pragma once

// Real- and imaginary-time propagation of Fock-space states.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "noonsim/fock.hpp"

namespace noonsim {

/// Piecewise-linear function of time through (t, value) knots with strictly
/// increasing t. Clamps to the end values outside the knot range.
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots);
  static PiecewiseLinear linear(double t0, double v0, double t1, double v1);

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// Time-dependent parameters over [0, duration]. When `u_ramp` is set it
/// overrides both u_left and u_right.
struct ParamSchedule {
  SystemParams base;
  std::optional<PiecewiseLinear> u_ramp;
  double duration = 0.0;

  static ParamSchedule constant(const SystemParams& params, double duration);
  static ParamSchedule linear_u(const SystemParams& base, double u_start, double u_end, double duration);

  SystemParams at(double t) const;
  bool time_independent() const;
  void validate() const;
};

enum class IntegrationMethod { kExponentialEigen, kAdaptiveRK };

struct IntegratorConfig {
  IntegrationMethod method = IntegrationMethod::kAdaptiveRK;
  double step_tolerance = 1e-13;  // absolute and relative local error target
  double max_step = 0.01;         // seconds

  void validate() const;
};

/// Norm drift above this aborts an evolution; below it the state is renormalised.
inline constexpr double kMaxNormDrift = 1e-6;

struct EvolveReport {
  FockVector state;
  double norm_drift = 0.0;  // | ||c|| - 1 | before renormalisation
  std::size_t steps = 0;
};

/// Solves i dc/dt = H(t) c over [0, schedule.duration].
EvolveReport real_evolve_report(const FockVector& state, const ParamSchedule& schedule,
                                const IntegratorConfig& config);
FockVector real_evolve(const FockVector& state, const ParamSchedule& schedule, const IntegratorConfig& config);

/// Spectral decomposition of a Hamiltonian; the exact propagator
/// exp(-i H t) and the lowest eigenvectors come from it.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HamiltonianMatrix& h);

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return vectors_; }

  Eigen::MatrixXcd unitary(double t) const;
  std::vector<Complex> apply(std::span<const Complex> psi, double t) const;
  /// Orthonormal basis of the lowest eigenspace (eigenvalues within
  /// `degeneracy_tol` of the minimum).
  std::vector<FockVector> ground_space(double degeneracy_tol = 1e-9) const;

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

/// exp(-i H t) psi by eigendecomposition. The oracle for real_evolve.
FockVector propagate_exact(const FockVector& state, const SystemParams& params, double t);

struct GroundStateOptions {
  double tol = 1e-12;  // bound on the eigen-residual ||H c - E c||, rad/s
  std::size_t max_iterations = 20'000'000;
  bool record_energies = false;
};

struct GroundStateResult {
  FockVector state;
  double energy = 0.0;
  std::size_t iterations = 0;
  double last_energy_change = 0.0;
  double residual = 0.0;  // ||H c - E c|| at exit
  std::vector<double> energies;  // filled when record_energies is set
};

/// Imaginary-time relaxation from uniform positive amplitudes. Each step
/// applies the decay map (1 - dtau H) with dtau = 0.1 / ||H|| and renormalises.
/// A symmetric start selects the symmetric member of a near-degenerate pair.
/// Throws ConvergenceFailure after max_iterations.
GroundStateResult ground_state_report(const SystemParams& params, int atoms, const GroundStateOptions& options);
FockVector ground_state(const SystemParams& params, int atoms, double tol = 1e-12);

struct Trajectory {
  std::vector<double> times;
  std::vector<FockVector> states;
  double max_norm_drift = 0.0;

  const FockVector& final_state() const { return states.back(); }
};

inline constexpr std::size_t kDefaultTrajectorySamples = 200;

struct RampSpec {
  int atoms = 20;
  double kappa = 10.0;
  double u_start = 1.0;
  double u_end = -3.0;
  double ramp_time = 1.0;
  InteractionConvention convention = InteractionConvention::kFull;
  std::size_t samples = kDefaultTrajectorySamples;  // uniform, includes t = 0 and t = ramp_time
};

/// Starts in the ground state at u_start and evolves under the linear U(t).
Trajectory ramp_run(const RampSpec& spec, const IntegratorConfig& config,
                    const GroundStateOptions& ground = {});

/// max over phi of |<NOON(phi)|psi>|^2 = (|c_0| + |c_N|)^2 / 2.
double noon_fidelity(const FockVector& state);
/// The per-atom phase phi at which make_noon(N, phi) attains noon_fidelity.
double best_noon_phase(const FockVector& state);

struct FidelityPoint {
  double ramp_time = 0.0;
  double fidelity = 0.0;
  double diff_variance = 0.0;
  double norm_drift = 0.0;
};

struct FidelitySweep {
  std::vector<FidelityPoint> points;
  double reference_fidelity = 0.0;  // ground state at u_end vs NOON
};

/// One ramp_run per ramp time (spec.ramp_time is ignored), in input order.
FidelitySweep fidelity_vs_ramp(const RampSpec& spec, const std::vector<double>& ramp_times,
                               const IntegratorConfig& config, const GroundStateOptions& ground = {});

}  // namespace noonsim
