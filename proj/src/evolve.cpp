#include "noonsim/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "noonsim/errors.hpp"
#include "noonsim/kernels.hpp"

namespace noonsim {

namespace odeint = boost::numeric::odeint;

// ---- schedules -------------------------------------------------------------

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw std::invalid_argument("PiecewiseLinear needs at least one knot");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second)) {
      throw std::invalid_argument("PiecewiseLinear knots must be finite");
    }
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first)) {
      throw std::invalid_argument("PiecewiseLinear knot times must increase strictly");
    }
  }
}

PiecewiseLinear PiecewiseLinear::linear(double t0, double v0, double t1, double v1) {
  return PiecewiseLinear({{t0, v0}, {t1, v1}});
}

double PiecewiseLinear::operator()(double t) const {
  if (t <= knots_.front().first) return knots_.front().second;
  if (t >= knots_.back().first) return knots_.back().second;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double x, const auto& k) { return x < k.first; });
  const auto lo = hi - 1;
  const double f = (t - lo->first) / (hi->first - lo->first);
  return lo->second + f * (hi->second - lo->second);
}

ParamSchedule ParamSchedule::constant(const SystemParams& params, double duration) {
  ParamSchedule s;
  s.base = params;
  s.duration = duration;
  return s;
}

ParamSchedule ParamSchedule::linear_u(const SystemParams& base, double u_start, double u_end, double duration) {
  ParamSchedule s;
  s.base = base;
  s.base.u_left = s.base.u_right = u_start;
  s.u_ramp = PiecewiseLinear::linear(0.0, u_start, duration, u_end);
  s.duration = duration;
  return s;
}

SystemParams ParamSchedule::at(double t) const {
  SystemParams p = base;
  if (u_ramp) p.u_left = p.u_right = (*u_ramp)(std::clamp(t, 0.0, duration));
  return p;
}

bool ParamSchedule::time_independent() const {
  if (!u_ramp) return true;
  const auto& k = u_ramp->knots();
  return std::all_of(k.begin(), k.end(), [&](const auto& p) { return p.second == k.front().second; });
}

void ParamSchedule::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw std::invalid_argument("schedule duration must be >= 0");
  base.validate();
}

void IntegratorConfig::validate() const {
  if (!(step_tolerance > 0.0)) throw std::invalid_argument("step_tolerance must be > 0");
  if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be > 0");
}

// ---- exact propagation -----------------------------------------------------

SpectralPropagator::SpectralPropagator(const HamiltonianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
  if (solver.info() != Eigen::Success) throw NumericalError("Hamiltonian eigendecomposition failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd SpectralPropagator::unitary(double t) const {
  Eigen::VectorXcd phases(values_.size());
  for (Eigen::Index k = 0; k < values_.size(); ++k) phases(k) = std::polar(1.0, -values_(k) * t);
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

std::vector<Complex> SpectralPropagator::apply(std::span<const Complex> psi, double t) const {
  const auto d = static_cast<Eigen::Index>(psi.size());
  Eigen::Map<const Eigen::VectorXcd> in(psi.data(), d);
  Eigen::VectorXcd coeff = vectors_.adjoint() * in;
  for (Eigen::Index k = 0; k < d; ++k) coeff(k) *= std::polar(1.0, -values_(k) * t);
  Eigen::VectorXcd out = vectors_ * coeff;
  return {out.data(), out.data() + d};
}

std::vector<FockVector> SpectralPropagator::ground_space(double degeneracy_tol) const {
  std::vector<FockVector> space;
  const double e0 = values_(0);
  for (Eigen::Index k = 0; k < values_.size() && values_(k) - e0 <= degeneracy_tol; ++k) {
    const auto col = vectors_.col(k);
    space.push_back(FockVector::normalized({col.data(), col.data() + col.size()}));
  }
  return space;
}

FockVector propagate_exact(const FockVector& state, const SystemParams& params, double t) {
  const SpectralPropagator prop(hamiltonian_matrix(params, state.atoms()));
  return FockVector::normalized(prop.apply(state.amplitudes(), t));
}

// ---- real-time evolution ---------------------------------------------------

namespace {

using StateType = std::vector<Complex>;

// dc/dt = -i H(t) c with H(t) = H_static + u_left(t) D_L + u_right(t) D_R.
class SchrodingerRhs {
 public:
  SchrodingerRhs(const ParamSchedule& schedule, int atoms)
      : schedule_(schedule), static_h_(hamiltonian_matrix(without_interaction(schedule.base), atoms)) {
    const double scale = schedule.base.convention == InteractionConvention::kHalf ? 0.5 : 1.0;
    const auto dim = static_cast<std::size_t>(atoms) + 1;
    pair_left_.resize(dim);
    pair_right_.resize(dim);
    for (std::size_t n = 0; n < dim; ++n) {
      const double l = static_cast<double>(atoms) - static_cast<double>(n);
      const double r = static_cast<double>(n);
      pair_left_[n] = scale * l * (l - 1.0);
      pair_right_[n] = scale * r * (r - 1.0);
    }
  }

  void operator()(const StateType& c, StateType& dcdt, double t) const {
    const SystemParams p = schedule_.at(t);
    const auto& diag = static_h_.diagonal();
    const auto& coup = static_h_.coupling();
    const std::size_t d = c.size();
    for (std::size_t n = 0; n < d; ++n) {
      Complex hc = (diag[n] + p.u_left * pair_left_[n] + p.u_right * pair_right_[n]) * c[n];
      if (n + 1 < d) hc += coup[n] * c[n + 1];
      if (n > 0) hc += coup[n - 1] * c[n - 1];
      dcdt[n] = Complex(hc.imag(), -hc.real());  // -i * hc
    }
  }

 private:
  static SystemParams without_interaction(SystemParams p) {
    p.u_left = p.u_right = 0.0;
    return p;
  }

  const ParamSchedule& schedule_;
  HamiltonianMatrix static_h_;
  std::vector<double> pair_left_;
  std::vector<double> pair_right_;
};

EvolveReport finish(std::vector<Complex> amps, std::size_t steps) {
  double n2 = 0.0;
  for (const auto& c : amps) n2 += std::norm(c);
  const double drift = std::abs(std::sqrt(n2) - 1.0);
  if (!(drift <= kMaxNormDrift)) {
    throw IntegrationFailure("norm drift " + std::to_string(drift) +
                             " exceeds limit; tighten step_tolerance or max_step");
  }
  return {FockVector::normalized(std::move(amps)), drift, steps};
}

std::size_t integrate_rk(StateType& c, const ParamSchedule& schedule, const IntegratorConfig& config,
                         double t0, double t1) {
  if (t1 <= t0) return 0;
  const SchrodingerRhs rhs(schedule, static_cast<int>(c.size()) - 1);
  using Stepper = odeint::runge_kutta_dopri5<StateType, double, StateType, double>;
  auto stepper = odeint::make_controlled(config.step_tolerance, config.step_tolerance, config.max_step, Stepper());
  const double dt0 = std::min(config.max_step, (t1 - t0) / 16.0);
  return odeint::integrate_adaptive(stepper, std::cref(rhs), c, t0, t1, dt0);
}

}  // namespace

EvolveReport real_evolve_report(const FockVector& state, const ParamSchedule& schedule,
                                const IntegratorConfig& config) {
  schedule.validate();
  config.validate();
  if (config.method == IntegrationMethod::kExponentialEigen) {
    if (!schedule.time_independent()) {
      throw std::invalid_argument("EXPONENTIAL_EIGEN needs a time-independent schedule");
    }
    const SpectralPropagator prop(hamiltonian_matrix(schedule.at(0.0), state.atoms()));
    return finish(prop.apply(state.amplitudes(), schedule.duration), 1);
  }
  StateType c(state.amplitudes().begin(), state.amplitudes().end());
  const std::size_t steps = integrate_rk(c, schedule, config, 0.0, schedule.duration);
  return finish(std::move(c), steps);
}

FockVector real_evolve(const FockVector& state, const ParamSchedule& schedule, const IntegratorConfig& config) {
  return real_evolve_report(state, schedule, config).state;
}

// ---- imaginary time --------------------------------------------------------

GroundStateResult ground_state_report(const SystemParams& params, int atoms, const GroundStateOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("ground-state tolerance must be > 0");
  // The uniform positive start relies on a non-negative tunnelling amplitude.
  if (params.kappa < 0.0) throw std::invalid_argument("ground state needs kappa >= 0");
  const HamiltonianMatrix h = hamiltonian_matrix(params, atoms);
  const auto dim = h.dimension();
  const double radius = h.spectral_radius_bound();
  if (radius == 0.0) {
    // H = 0: every state is a ground state; the symmetric start is returned.
    return {FockVector::normalized(StateType(dim, 1.0)), 0.0, 0, 0.0, 0.0, {}};
  }
  const double dtau = 0.1 / radius;
  // Rounding in H c alone leaves a residual of order eps ||H|| sqrt(dim);
  // tolerances below that floor are raised to it.
  const double threshold = std::max(options.tol, 16.0 * std::numeric_limits<double>::epsilon() * radius *
                                                     std::sqrt(static_cast<double>(dim)));

  StateType c(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  StateType hc(dim);
  GroundStateResult result{FockVector::normalized(c), h.expectation(c), 0, 0.0, 0.0, {}};
  double energy = result.energy;
  if (options.record_energies) result.energies.push_back(energy);

  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    h.apply(c, hc);
    // Eigen-residual || H c - E c || of the current iterate.
    double r2 = 0.0;
    for (std::size_t n = 0; n < dim; ++n) r2 += std::norm(hc[n] - energy * c[n]);
    const double residual = std::sqrt(r2);
    if (residual < threshold) {
      result.state = FockVector::normalized(std::move(c));
      result.energy = energy;
      result.iterations = it - 1;
      result.residual = residual;
      return result;
    }
    double n2 = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
      c[n] -= dtau * hc[n];
      n2 += std::norm(c[n]);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& x : c) x *= inv;
    const double next = h.expectation(c);
    result.last_energy_change = energy - next;
    result.residual = residual;
    energy = next;
    if (options.record_energies) result.energies.push_back(energy);
  }
  throw ConvergenceFailure("imaginary-time propagation did not converge in " +
                               std::to_string(options.max_iterations) + " steps; residual " +
                               std::to_string(result.residual),
                           result.residual);
}

FockVector ground_state(const SystemParams& params, int atoms, double tol) {
  GroundStateOptions opt;
  opt.tol = tol;
  return ground_state_report(params, atoms, opt).state;
}

// ---- ramps -----------------------------------------------------------------

Trajectory ramp_run(const RampSpec& spec, const IntegratorConfig& config, const GroundStateOptions& ground) {
  if (!(spec.ramp_time > 0.0)) throw std::invalid_argument("ramp_time must be > 0");
  if (spec.samples < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
  if (config.method != IntegrationMethod::kAdaptiveRK) {
    throw std::invalid_argument("a ramp is time-dependent; use ADAPTIVE_RK");
  }
  config.validate();

  const SystemParams start = SystemParams::symmetric(spec.kappa, spec.u_start, spec.convention);
  const ParamSchedule schedule = ParamSchedule::linear_u(start, spec.u_start, spec.u_end, spec.ramp_time);

  Trajectory traj;
  traj.times.reserve(spec.samples);
  traj.states.reserve(spec.samples);
  const FockVector initial = ground_state_report(start, spec.atoms, ground).state;
  traj.times.push_back(0.0);
  traj.states.push_back(initial);

  // Integrate sample-to-sample without renormalising so the final drift
  // measures the whole run.
  StateType c(initial.amplitudes().begin(), initial.amplitudes().end());
  const auto segments = static_cast<double>(spec.samples - 1);
  for (std::size_t i = 1; i < spec.samples; ++i) {
    const double t0 = spec.ramp_time * static_cast<double>(i - 1) / segments;
    const double t1 = i + 1 == spec.samples ? spec.ramp_time : spec.ramp_time * static_cast<double>(i) / segments;
    integrate_rk(c, schedule, config, t0, t1);
    EvolveReport r = finish(c, 0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, r.norm_drift);
    traj.times.push_back(t1);
    traj.states.push_back(std::move(r.state));
  }
  return traj;
}

double noon_fidelity(const FockVector& state) {
  const double s = std::abs(state[0]) + std::abs(state[state.dimension() - 1]);
  return 0.5 * s * s;
}

double best_noon_phase(const FockVector& state) {
  // |c_0 + e^{-i N phi} c_N| is maximal when N phi = arg c_N - arg c_0.
  const Complex rel = state[state.dimension() - 1] * std::conj(state[0]);
  return std::arg(rel) / static_cast<double>(state.atoms());
}

FidelitySweep fidelity_vs_ramp(const RampSpec& spec, const std::vector<double>& ramp_times,
                               const IntegratorConfig& config, const GroundStateOptions& ground) {
  if (ramp_times.empty()) throw std::invalid_argument("ramp_times must be nonempty");
  FidelitySweep sweep;
  sweep.points = kernels::ramp_sweep_omp(spec, ramp_times, config, ground);
  const SystemParams end = SystemParams::symmetric(spec.kappa, spec.u_end, spec.convention);
  sweep.reference_fidelity = noon_fidelity(ground_state_report(end, spec.atoms, ground).state);
  return sweep;
}

}  // namespace noonsim
