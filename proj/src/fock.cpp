#include "noonsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace noonsim {

namespace {

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

void require_atoms(int atoms) {
  if (atoms < 1) throw std::invalid_argument("atom number must be >= 1, got " + std::to_string(atoms));
}

template <class F>
double ensemble_average(const MixedEnsemble& state, F&& f) {
  double acc = 0.0;
  for (const auto& [w, s] : state.components()) acc += w * f(s);
  return acc;
}

// Applies X_theta to v.
void apply_quadrature(int atoms, const Complex& phase, std::span<const Complex> in,
                      std::span<Complex> out) {
  // <n| a_L^dag a_R |n+1> = sqrt((N-n)(n+1)); X[n][n+1] = that * e^{-i theta}.
  const auto dim = static_cast<std::size_t>(atoms) + 1;
  for (std::size_t n = 0; n < dim; ++n) {
    Complex acc{0.0, 0.0};
    if (n + 1 < dim) {
      const double g = std::sqrt(static_cast<double>(atoms - static_cast<int>(n)) * static_cast<double>(n + 1));
      acc += g * phase * in[n + 1];
    }
    if (n > 0) {
      const double g = std::sqrt(static_cast<double>(atoms - static_cast<int>(n) + 1) * static_cast<double>(n));
      acc += g * std::conj(phase) * in[n - 1];
    }
    out[n] = acc;
  }
}

}  // namespace

// ---- FockVector ------------------------------------------------------------

FockVector::FockVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 2) throw std::invalid_argument("FockVector needs at least 2 amplitudes (N >= 1)");
  const double n2 = squared_norm(amps_);
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("FockVector is not normalized: sum |c_n|^2 = " + std::to_string(n2));
  }
}

FockVector FockVector::normalized(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  for (auto& c : amplitudes) c /= n;
  return FockVector(std::move(amplitudes));
}

FockVector FockVector::basis(int atoms, int n) {
  require_atoms(atoms);
  if (n < 0 || n > atoms) throw std::invalid_argument("basis index out of range");
  std::vector<Complex> v(static_cast<std::size_t>(atoms) + 1);
  v[static_cast<std::size_t>(n)] = 1.0;
  return FockVector(std::move(v));
}

double FockVector::norm() const { return std::sqrt(squared_norm(amps_)); }

std::vector<double> FockVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& c) { return std::norm(c); });
  return p;
}

FockVector FockVector::reversed() const {
  std::vector<Complex> v(amps_.rbegin(), amps_.rend());
  return FockVector(std::move(v));
}

// ---- MixedEnsemble ---------------------------------------------------------

MixedEnsemble::MixedEnsemble(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("ensemble needs at least one component");
  double total = 0.0;
  const int atoms = components_.front().state.atoms();
  for (const auto& [w, s] : components_) {
    if (!(w > 0.0 && w <= 1.0)) throw std::invalid_argument("ensemble weights must lie in (0, 1]");
    if (s.atoms() != atoms) throw std::invalid_argument("ensemble components must share the same N");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ensemble weights must sum to 1, got " + std::to_string(total));
  }
}

MixedEnsemble MixedEnsemble::pure(FockVector state) {
  std::vector<Component> c;
  c.push_back({1.0, std::move(state)});
  return MixedEnsemble(std::move(c));
}

Complex MixedEnsemble::density_element(int i, int j) const {
  Complex acc{0.0, 0.0};
  for (const auto& [w, s] : components_) {
    acc += w * s[static_cast<std::size_t>(i)] * std::conj(s[static_cast<std::size_t>(j)]);
  }
  return acc;
}

// ---- SystemParams / Hamiltonian -------------------------------------------

SystemParams SystemParams::symmetric(double kappa, double u, InteractionConvention convention) {
  SystemParams p;
  p.kappa = kappa;
  p.u_left = u;
  p.u_right = u;
  p.convention = convention;
  return p;
}

void SystemParams::validate() const {
  for (double v : {kappa, u_left, u_right, e_left, e_right}) {
    if (!std::isfinite(v)) throw std::invalid_argument("system parameters must be finite");
  }
}

HamiltonianMatrix::HamiltonianMatrix(std::vector<double> diagonal, std::vector<double> coupling)
    : diagonal_(std::move(diagonal)), coupling_(std::move(coupling)) {
  if (diagonal_.size() < 2 || coupling_.size() + 1 != diagonal_.size()) {
    throw std::invalid_argument("HamiltonianMatrix: need N+1 diagonal and N coupling entries");
  }
}

Complex HamiltonianMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return diagonal_[i];
  if (j == i + 1) return coupling_[i];
  if (i == j + 1) return coupling_[j];
  return 0.0;
}

Eigen::MatrixXcd HamiltonianMatrix::dense() const {
  const auto d = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    m(n, n) = diagonal_[static_cast<std::size_t>(n)];
    if (n + 1 < d) {
      m(n, n + 1) = coupling_[static_cast<std::size_t>(n)];
      m(n + 1, n) = coupling_[static_cast<std::size_t>(n)];
    }
  }
  return m;
}

void HamiltonianMatrix::apply(std::span<const Complex> in, std::span<Complex> out) const {
  const std::size_t d = dimension();
  if (in.size() != d || out.size() != d) throw std::invalid_argument("HamiltonianMatrix::apply: size mismatch");
  for (std::size_t n = 0; n < d; ++n) {
    Complex acc = diagonal_[n] * in[n];
    if (n + 1 < d) acc += coupling_[n] * in[n + 1];
    if (n > 0) acc += coupling_[n - 1] * in[n - 1];
    out[n] = acc;
  }
}

double HamiltonianMatrix::expectation(std::span<const Complex> psi) const {
  const std::size_t d = dimension();
  double e = 0.0;
  for (std::size_t n = 0; n < d; ++n) {
    e += diagonal_[n] * std::norm(psi[n]);
    if (n + 1 < d) e += 2.0 * coupling_[n] * std::real(std::conj(psi[n]) * psi[n + 1]);
  }
  return e;
}

double HamiltonianMatrix::spectral_radius_bound() const {
  const std::size_t d = dimension();
  double r = 0.0;
  for (std::size_t n = 0; n < d; ++n) {
    double row = std::abs(diagonal_[n]);
    if (n + 1 < d) row += std::abs(coupling_[n]);
    if (n > 0) row += std::abs(coupling_[n - 1]);
    r = std::max(r, row);
  }
  return r;
}

HamiltonianMatrix hamiltonian_matrix(const SystemParams& params, int atoms) {
  require_atoms(atoms);
  params.validate();
  const double scale = params.convention == InteractionConvention::kHalf ? 0.5 : 1.0;
  const double chi_l = scale * params.u_left;
  const double chi_r = scale * params.u_right;
  const auto dim = static_cast<std::size_t>(atoms) + 1;
  std::vector<double> diag(dim);
  std::vector<double> coup(dim - 1);
  for (std::size_t n = 0; n < dim; ++n) {
    const double left = static_cast<double>(atoms) - static_cast<double>(n);
    const double right = static_cast<double>(n);
    diag[n] = params.e_left * left + params.e_right * right + chi_l * left * (left - 1.0) +
              chi_r * right * (right - 1.0);
  }
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    coup[n] = -params.kappa * std::sqrt(static_cast<double>((n + 1) * (static_cast<std::size_t>(atoms) - n)));
  }
  return HamiltonianMatrix(std::move(diag), std::move(coup));
}

// ---- constructors ----------------------------------------------------------

FockVector make_noon(int atoms, double phi) {
  require_atoms(atoms);
  std::vector<Complex> v(static_cast<std::size_t>(atoms) + 1);
  const double a = std::numbers::sqrt2 / 2.0;
  v.front() = a;
  v.back() = std::polar(a, static_cast<double>(atoms) * phi);
  return FockVector(std::move(v));
}

MixedEnsemble make_mixture(int atoms) {
  require_atoms(atoms);
  std::vector<MixedEnsemble::Component> c;
  c.push_back({0.5, FockVector::basis(atoms, 0)});
  c.push_back({0.5, FockVector::basis(atoms, atoms)});
  return MixedEnsemble(std::move(c));
}

// ---- observables -----------------------------------------------------------

double mean_left(const FockVector& state) {
  const int atoms = state.atoms();
  double m = 0.0;
  for (int n = 0; n <= atoms; ++n) m += (atoms - n) * std::norm(state[static_cast<std::size_t>(n)]);
  return m;
}

double mean_left(const MixedEnsemble& state) {
  return ensemble_average(state, [](const FockVector& s) { return mean_left(s); });
}

namespace {

struct DiffMoments {
  double first = 0.0;
  double second = 0.0;
};

DiffMoments diff_moments(const FockVector& state) {
  const int atoms = state.atoms();
  DiffMoments m;
  for (int n = 0; n <= atoms; ++n) {
    const double d = atoms - 2.0 * n;
    const double p = std::norm(state[static_cast<std::size_t>(n)]);
    m.first += d * p;
    m.second += d * d * p;
  }
  return m;
}

}  // namespace

double diff_variance(const FockVector& state) {
  const auto m = diff_moments(state);
  return m.second - m.first * m.first;
}

double diff_variance(const MixedEnsemble& state) {
  DiffMoments avg;
  for (const auto& [w, s] : state.components()) {
    const auto m = diff_moments(s);
    avg.first += w * m.first;
    avg.second += w * m.second;
  }
  return avg.second - avg.first * avg.first;
}

double parity(const FockVector& state) {
  double p = 0.0;
  for (std::size_t n = 0; n < state.dimension(); ++n) p += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(state[n]);
  return p;
}

double parity(const MixedEnsemble& state) {
  return ensemble_average(state, [](const FockVector& s) { return parity(s); });
}

double fidelity(const FockVector& a, const FockVector& b) {
  if (a.atoms() != b.atoms()) throw std::invalid_argument("fidelity: mismatched atom numbers");
  Complex overlap{0.0, 0.0};
  for (std::size_t n = 0; n < a.dimension(); ++n) overlap += std::conj(a[n]) * b[n];
  return std::norm(overlap);
}

double fidelity(const FockVector& a, const MixedEnsemble& b) {
  if (a.atoms() != b.atoms()) throw std::invalid_argument("fidelity: mismatched atom numbers");
  return ensemble_average(b, [&](const FockVector& s) { return fidelity(a, s); });
}

Eigen::MatrixXcd quadrature_matrix(int atoms, double theta) {
  require_atoms(atoms);
  const auto d = static_cast<Eigen::Index>(atoms) + 1;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  const Complex phase = std::polar(1.0, -theta);
  for (Eigen::Index n = 0; n + 1 < d; ++n) {
    const double g = std::sqrt(static_cast<double>((atoms - n) * (n + 1)));
    x(n, n + 1) = g * phase;
    x(n + 1, n) = g * std::conj(phase);
  }
  return x;
}

double quadrature_moment(const FockVector& state, double theta, int k) {
  if (k < 0) throw std::invalid_argument("quadrature moment order must be >= 0");
  if (k > kMaxQuadratureMoment) throw std::invalid_argument("quadrature moment order exceeds kMaxQuadratureMoment");
  const int atoms = state.atoms();
  const Complex phase = std::polar(1.0, -theta);
  // <psi|X^k|psi> = <X^a psi | X^b psi> with a + b = k, halving the work.
  const int a = k / 2;
  const int b = k - a;
  std::vector<Complex> left(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<Complex> scratch(left.size());
  for (int i = 0; i < a; ++i) {
    apply_quadrature(atoms, phase, left, scratch);
    left.swap(scratch);
  }
  std::vector<Complex> right = left;
  for (int i = a; i < b; ++i) {
    apply_quadrature(atoms, phase, right, scratch);
    right.swap(scratch);
  }
  Complex acc{0.0, 0.0};
  for (std::size_t n = 0; n < left.size(); ++n) acc += std::conj(left[n]) * right[n];
  if (!std::isfinite(acc.real())) throw std::overflow_error("quadrature moment overflowed");
  return acc.real();
}

double quadrature_moment(const MixedEnsemble& state, double theta, int k) {
  return ensemble_average(state, [&](const FockVector& s) { return quadrature_moment(s, theta, k); });
}

}  // namespace noonsim
