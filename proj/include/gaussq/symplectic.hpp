#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "gaussq/entropics.hpp"

// Covariance-matrix formalism. Quadratures are ordered (Q1, P1, ..., Qn, Pn)
// and the vacuum covariance is identity / 2.

namespace gaussq {

/// Validation tolerances.
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kUncertaintyTolerance = 1e-10;
inline constexpr double kSymplecticTolerance = 1e-10;
inline constexpr double kPairingTolerance = 1e-9;
/// Relative to the largest covariance entry: symplectic eigenvalues within
/// this distance of 1/2 count as pure in gaussian_entropy.
inline constexpr double kPureModeTolerance = 1e-12;

/// Real symmetric 2n x 2n matrix of symmetrised quadrature second moments,
/// validated to satisfy the uncertainty relation (all symplectic eigenvalues
/// >= 1/2 up to kUncertaintyTolerance).
class CovarianceMatrix {
 public:
  /// Validates and stores `m`; throws InvalidStateError on failure.
  static CovarianceMatrix from_matrix(const Eigen::MatrixXd& m);
  static CovarianceMatrix vacuum(int modes);
  static CovarianceMatrix thermal(double energy);

  int modes() const noexcept { return static_cast<int>(m_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  explicit CovarianceMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}

  Eigen::MatrixXd m_;
};

/// Block-diagonal direct sum of [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// Real matrix S with S Delta S^T == Delta.
class SymplecticMatrix {
 public:
  static SymplecticMatrix from_matrix(const Eigen::MatrixXd& s);
  static SymplecticMatrix identity(int modes);

  int modes() const noexcept { return static_cast<int>(s_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const noexcept { return s_; }

  /// Acts as `this` on modes (first, second) of an n-mode system and as the
  /// identity elsewhere. Requires a two-mode matrix.
  SymplecticMatrix embed(int total_modes, int first, int second) const;

 private:
  explicit SymplecticMatrix(Eigen::MatrixXd s) : s_(std::move(s)) {}

  Eigen::MatrixXd s_;
};

/// Symplectic eigenvalues, descending: the moduli of the pure-imaginary,
/// pairwise-opposite eigenvalues of Delta^{-1} sigma.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Von Neumann entropy of the Gaussian state with covariance `sigma`.
Nats gaussian_entropy(const CovarianceMatrix& sigma);

/// Principal submatrix on the listed modes, in the listed order.
CovarianceMatrix marginal(const CovarianceMatrix& sigma, std::span<const int> modes);

/// Block-diagonal covariance of a product state.
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// Beam splitter of transmissivity eta: a -> sqrt(eta) a + sqrt(1-eta) b.
SymplecticMatrix beam_splitter_symplectic(double eta);

/// Two-mode squeezer of gain kappa: a -> sqrt(kappa) a + sqrt(kappa-1) b^dagger.
SymplecticMatrix two_mode_squeezer_symplectic(double kappa);

/// sigma -> S sigma S^T, symmetrised.
CovarianceMatrix apply_symplectic(const SymplecticMatrix& s, const CovarianceMatrix& sigma);

/// One-mode channel actions on covariance matrices.
CovarianceMatrix attenuator_cov(const CovarianceMatrix& sigma, double eta);
CovarianceMatrix amplifier_cov(const CovarianceMatrix& sigma, double kappa);
CovarianceMatrix amplifier_complement_cov(const CovarianceMatrix& sigma, double kappa);

}  // namespace gaussq
