#pragma once

// Fixed-N Fock space of a two-mode (double-well) condensate.
//
// Basis index n labels |N-n, n>: N-n atoms in the left well, n in the right.
// All energies are angular frequencies (hbar divided out), so a Hamiltonian
// entry of 1.0 means 1 rad/s.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace noonsim {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;

/// Pure state of N atoms: N+1 amplitudes over |N-n, n>.
class FockVector {
 public:
  /// Takes ownership of `amplitudes`; throws std::invalid_argument unless the
  /// length is at least 2 and the norm is 1 within kNormTolerance.
  explicit FockVector(std::vector<Complex> amplitudes);

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static FockVector normalized(std::vector<Complex> amplitudes);
  /// |N-n, n>.
  static FockVector basis(int atoms, int n);

  int atoms() const noexcept { return static_cast<int>(amps_.size()) - 1; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t n) const { return amps_[n]; }

  double norm() const;
  std::vector<double> probabilities() const;
  /// Well exchange: amplitude n moves to N-n.
  FockVector reversed() const;

 private:
  std::vector<Complex> amps_;
};

/// Incoherent mixture of pure states sharing the same N.
class MixedEnsemble {
 public:
  struct Component {
    double weight;
    FockVector state;
  };

  /// Weights must lie in (0, 1] and sum to 1 within 1e-12.
  explicit MixedEnsemble(std::vector<Component> components);
  /// A single pure state with weight 1.
  static MixedEnsemble pure(FockVector state);

  int atoms() const noexcept { return components_.front().state.atoms(); }
  const std::vector<Component>& components() const noexcept { return components_; }

  /// <N-i, i| rho |N-j, j>.
  Complex density_element(int i, int j) const;

 private:
  std::vector<Component> components_;
};

enum class InteractionConvention {
  kHalf,  // chi = U/2, the prefactor of the second-quantised Hamiltonian
  kFull,  // chi = U, the coefficient of the number-state equations of motion
};

/// Two-mode model parameters, all in rad/s.
struct SystemParams {
  double kappa = 0.0;
  double u_left = 0.0;
  double u_right = 0.0;
  double e_left = 0.0;
  double e_right = 0.0;
  InteractionConvention convention = InteractionConvention::kFull;

  static SystemParams symmetric(double kappa, double u,
                                InteractionConvention convention = InteractionConvention::kFull);
  bool is_symmetric() const noexcept { return e_left == e_right && u_left == u_right; }
  void validate() const;
};

/// Tridiagonal Hermitian Hamiltonian over the Fock basis.
///
/// diagonal[n] = E_L(N-n) + E_R n + chi_L (N-n)(N-n-1) + chi_R n(n-1)
/// coupling[n] = -kappa sqrt((n+1)(N-n))   (entry (n, n+1) and (n+1, n))
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(std::vector<double> diagonal, std::vector<double> coupling);

  int atoms() const noexcept { return static_cast<int>(diagonal_.size()) - 1; }
  std::size_t dimension() const noexcept { return diagonal_.size(); }
  const std::vector<double>& diagonal() const noexcept { return diagonal_; }
  const std::vector<double>& coupling() const noexcept { return coupling_; }

  /// Entry (i, j); zero beyond the first off-diagonals.
  Complex operator()(std::size_t i, std::size_t j) const;
  Eigen::MatrixXcd dense() const;

  /// out = H * in. Sizes must equal dimension().
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  /// <psi|H|psi> for unit-norm psi.
  double expectation(std::span<const Complex> psi) const;
  /// Gershgorin bound on the spectral radius.
  double spectral_radius_bound() const;

 private:
  std::vector<double> diagonal_;
  std::vector<double> coupling_;
};

HamiltonianMatrix hamiltonian_matrix(const SystemParams& params, int atoms);

/// Per-atom relative phase convention: (|N,0> + e^{i N phi} |0,N>) / sqrt(2).
/// For N = 1 this is the textbook (|1,0> + e^{i phi}|0,1>)/sqrt(2).
FockVector make_noon(int atoms, double phi);
/// (|N,0><N,0| + |0,N><0,N|) / 2.
MixedEnsemble make_mixture(int atoms);

double mean_left(const FockVector& state);
double mean_left(const MixedEnsemble& state);

/// Variance of N_L - N_R.
double diff_variance(const FockVector& state);
/// Built from the ensemble-averaged first and second moments.
double diff_variance(const MixedEnsemble& state);

/// sum_n (-1)^n |c_n|^2, n being the right-well count.
double parity(const FockVector& state);
double parity(const MixedEnsemble& state);

/// |<a|b>|^2, or sum_k w_k |<a|b_k>|^2 for an ensemble.
double fidelity(const FockVector& a, const FockVector& b);
double fidelity(const FockVector& a, const MixedEnsemble& b);

/// Matrix of X_theta = a_L^dag a_R e^{-i theta} + a_R^dag a_L e^{i theta}.
Eigen::MatrixXcd quadrature_matrix(int atoms, double theta);

inline constexpr int kMaxQuadratureMoment = 256;

/// <X_theta^k> by repeated application of the quadrature matrix.
/// k is limited to kMaxQuadratureMoment; throws std::overflow_error if the
/// result is not finite (|X| <= N, so N^k must fit in a double).
double quadrature_moment(const FockVector& state, double theta, int k);
double quadrature_moment(const MixedEnsemble& state, double theta, int k);

}  // namespace noonsim
