#include "noonsim/ramsey.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "noonsim/csv.hpp"
#include "noonsim/kernels.hpp"

namespace noonsim {

double RamseyConfig::duration() const { return bs_duration.value_or(std::numbers::pi / (4.0 * kappa_bs)); }

SystemParams RamseyConfig::beam_splitter_params() const {
  return SystemParams::symmetric(kappa_bs, u_interference, convention);
}

void RamseyConfig::validate() const {
  if (!(kappa_bs > 0.0) || !std::isfinite(kappa_bs)) throw std::invalid_argument("kappa_bs must be > 0");
  if (!std::isfinite(u_interference)) throw std::invalid_argument("u_interference must be finite");
  if (bs_duration && !(*bs_duration > 0.0)) throw std::invalid_argument("bs_duration must be > 0");
  integrator.validate();
}

FockVector phase_stage(const FockVector& state, double theta, PhaseWell well) {
  const int atoms = state.atoms();
  std::vector<Complex> out(state.dimension());
  for (int n = 0; n <= atoms; ++n) {
    const int count = well == PhaseWell::kRight ? n : atoms - n;
    out[static_cast<std::size_t>(n)] = state[static_cast<std::size_t>(n)] * std::polar(1.0, -count * theta);
  }
  return FockVector(std::move(out));
}

RamseyRecord make_record(double theta, std::vector<double> distribution, int max_moment, double norm_drift) {
  if (max_moment < 0) throw std::invalid_argument("max_moment must be >= 0");
  RamseyRecord r;
  r.theta = theta;
  r.norm_drift = norm_drift;
  const int atoms = static_cast<int>(distribution.size()) - 1;
  r.moments.assign(static_cast<std::size_t>(std::max(max_moment, 2)) + 1, 0.0);
  for (int n = 0; n <= atoms; ++n) {
    const double p = distribution[static_cast<std::size_t>(n)];
    const double d = atoms - 2.0 * n;
    double pow = 1.0;
    for (auto& m : r.moments) {
      m += p * pow;
      pow *= d;
    }
    r.parity += (n % 2 == 0 ? p : -p);
  }
  r.mean_diff = r.moments[1];
  r.var_diff = r.moments[2] - r.moments[1] * r.moments[1];
  r.moments.resize(static_cast<std::size_t>(max_moment) + 1);
  r.distribution = std::move(distribution);
  return r;
}

// ---- channel ---------------------------------------------------------------

RamseyChannel::RamseyChannel(int atoms, const RamseyConfig& config) : atoms_(atoms), config_(config) {
  if (atoms < 1) throw std::invalid_argument("atom number must be >= 1");
  config_.validate();
  if (config_.integrator.method == IntegrationMethod::kExponentialEigen) {
    exact_.emplace(hamiltonian_matrix(config_.beam_splitter_params(), atoms));
  }
}

EvolveReport RamseyChannel::apply(const FockVector& state, double theta) const {
  if (state.atoms() != atoms_) throw std::invalid_argument("RamseyChannel: atom number mismatch");
  const double shifted = theta + config_.phase_sign() * kBeamSplitterPhaseOffset;
  const FockVector phased = phase_stage(state, shifted, config_.phase_well);
  if (exact_) {
    auto amps = exact_->apply(phased.amplitudes(), config_.duration());
    double n2 = 0.0;
    for (const auto& c : amps) n2 += std::norm(c);
    const double drift = std::abs(std::sqrt(n2) - 1.0);
    return {FockVector::normalized(std::move(amps)), drift, 1};
  }
  return real_evolve_report(phased, ParamSchedule::constant(config_.beam_splitter_params(), config_.duration()),
                            config_.integrator);
}

RamseyRecord RamseyChannel::run(const MixedEnsemble& state, double theta, int max_moment) const {
  std::vector<double> dist(static_cast<std::size_t>(atoms_) + 1, 0.0);
  double drift = 0.0;
  for (const auto& [w, s] : state.components()) {
    const EvolveReport out = apply(s, theta);
    drift = std::max(drift, out.norm_drift);
    for (std::size_t n = 0; n < dist.size(); ++n) dist[n] += w * std::norm(out.state[n]);
  }
  return make_record(theta, std::move(dist), max_moment, drift);
}

RamseyRecord ramsey_run(const FockVector& state, double theta, const RamseyConfig& config, int max_moment) {
  return ramsey_run(MixedEnsemble::pure(state), theta, config, max_moment);
}

RamseyRecord ramsey_run(const MixedEnsemble& state, double theta, const RamseyConfig& config, int max_moment) {
  return RamseyChannel(state.atoms(), config).run(state, theta, max_moment);
}

// ---- sweeps ----------------------------------------------------------------

std::vector<double> uniform_theta_grid(std::size_t points) {
  if (points == 0) throw std::invalid_argument("theta grid must be nonempty");
  std::vector<double> g(points);
  for (std::size_t k = 0; k < points; ++k) {
    g[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
  }
  return g;
}

std::vector<double> FringeData::thetas() const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.theta);
  return v;
}

std::vector<double> FringeData::parities() const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.parity);
  return v;
}

std::vector<double> FringeData::mean_diffs() const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.mean_diff);
  return v;
}

std::vector<double> FringeData::var_diffs() const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.var_diff);
  return v;
}

void FringeData::write_csv(std::ostream& out, bool with_distribution) const {
  CsvWriter csv(out);
  std::vector<std::string> header{"theta", "mean_diff", "var_diff", "parity"};
  if (with_distribution) {
    for (int n = 0; n <= atoms; ++n) header.push_back("p_" + std::to_string(n));
  }
  csv.header(header);
  for (const auto& r : records) {
    std::vector<double> row{r.theta, r.mean_diff, r.var_diff, r.parity};
    if (with_distribution) row.insert(row.end(), r.distribution.begin(), r.distribution.end());
    csv.row(row);
  }
}

FringeData fringe_sweep(const FockVector& state, const std::vector<double>& theta_grid, const RamseyConfig& config,
                        int max_moment) {
  return fringe_sweep(MixedEnsemble::pure(state), theta_grid, config, max_moment);
}

FringeData fringe_sweep(const MixedEnsemble& state, const std::vector<double>& theta_grid,
                        const RamseyConfig& config, int max_moment) {
  if (theta_grid.empty()) throw std::invalid_argument("theta grid must be nonempty");
  if (max_moment < 0) throw std::invalid_argument("max_moment must be >= 0");
  const RamseyChannel channel(state.atoms(), config);
  return kernels::fringe_sweep_omp(channel, state, theta_grid, max_moment);
}

}  // namespace noonsim
