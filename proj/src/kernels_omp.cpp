#include <exception>
#include <mutex>

#include "noonsim/kernels.hpp"

namespace noonsim::kernels {

namespace detail {
void dyad_parity_column(const RamseyChannel& channel, const std::vector<double>& thetas, std::size_t j,
                        std::vector<Complex>& out);
FidelityPoint ramp_point(const RampSpec& spec, double ramp_time, const IntegratorConfig& config,
                         const GroundStateOptions& ground);
}  // namespace detail

namespace {

// Exceptions must not cross an OpenMP region; keep the first one and rethrow.
class FirstError {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

long long as_count(std::size_t n) { return static_cast<long long>(n); }

}  // namespace

FringeData fringe_sweep_omp(const RamseyChannel& channel, const MixedEnsemble& state,
                            const std::vector<double>& thetas, int max_moment) {
  FringeData data;
  data.atoms = state.atoms();
  data.max_moment = max_moment;
  data.records.resize(thetas.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < as_count(thetas.size()); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    err.run([&] { data.records[jj] = channel.run(state, thetas[jj], max_moment); });
  }
  err.rethrow();
  return data;
}

std::vector<Complex> dyad_parity_omp(const RamseyChannel& channel, const std::vector<double>& thetas) {
  std::vector<Complex> out(dyad_count(channel.atoms()) * thetas.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < as_count(thetas.size()); ++j) {
    err.run([&] { detail::dyad_parity_column(channel, thetas, static_cast<std::size_t>(j), out); });
  }
  err.rethrow();
  return out;
}

std::vector<FidelityPoint> ramp_sweep_omp(const RampSpec& spec, const std::vector<double>& ramp_times,
                                          const IntegratorConfig& config, const GroundStateOptions& ground) {
  std::vector<FidelityPoint> out(ramp_times.size());
  FirstError err;
  // Ramp lengths differ by an order of magnitude.
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < as_count(ramp_times.size()); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    err.run([&] { out[ii] = detail::ramp_point(spec, ramp_times[ii], config, ground); });
  }
  err.rethrow();
  return out;
}

}  // namespace noonsim::kernels
