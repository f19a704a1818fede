#include "gaussq/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "gaussq/errors.hpp"
#include "gaussq/params.hpp"

namespace gaussq {

namespace {

using Eigen::MatrixXd;

std::vector<double> symplectic_spectrum(const MatrixXd& sigma) {
  const Eigen::Index dim = sigma.rows();
  const int n = static_cast<int>(dim / 2);
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());

  // With sigma = L L^T, Delta^{-1} sigma is similar to L^T Delta^T L, a real
  // antisymmetric matrix; i times it is Hermitian with spectrum +-nu_k. The
  // Hermitian solver is backward stable where the general one is not.
  // Extended precision keeps the near-pure modes of strongly squeezed states
  // resolvable; the matrices are tiny.
  using MatrixXl = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixXl wide = sigma.cast<long double>();
  const Eigen::LLT<MatrixXl> chol(wide);
  if (chol.info() != Eigen::Success) throw InvalidStateError("covariance matrix is not positive definite");
  const MatrixXl lower = chol.matrixL();
  const MatrixXl antisym = lower.transpose() * symplectic_form(n).transpose().cast<long double>() * lower;
  using Complexl = std::complex<long double>;
  const Eigen::Matrix<Complexl, Eigen::Dynamic, Eigen::Dynamic> hermitian = Complexl(0.0L, 1.0L) * antisym.cast<Complexl>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complexl, Eigen::Dynamic, Eigen::Dynamic>> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InvalidStateError("symplectic eigenvalue solver failed");
  const Eigen::VectorXd lambda = solver.eigenvalues().cast<double>();  // ascending

  std::vector<double> nu;
  nu.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double neg = -lambda(k);
    const double pos = lambda(dim - 1 - k);
    if (std::abs(neg - pos) > kPairingTolerance * scale) {
      throw InvalidStateError("eigenvalues of Delta^-1 sigma are not pairwise opposite");
    }
    nu.push_back(0.5 * (neg + pos));
  }
  return nu;  // descending
}

void require_one_mode(const CovarianceMatrix& sigma) {
  if (sigma.modes() != 1) throw DomainError("channel acts on one-mode covariance matrices only");
}

}  // namespace

// --- CovarianceMatrix ------------------------------------------------------

CovarianceMatrix CovarianceMatrix::from_matrix(const MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw InvalidStateError("covariance matrix must be square with even, positive dimension");
  }
  if (!m.allFinite()) throw InvalidStateError("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw InvalidStateError("covariance matrix is not symmetric");
  }
  MatrixXd symmetric = 0.5 * (m + m.transpose());
  const std::vector<double> nu = symplectic_spectrum(symmetric);
  if (nu.back() < 0.5 - kUncertaintyTolerance) {
    std::ostringstream os;
    os << "uncertainty relation violated: smallest symplectic eigenvalue " << nu.back() << " < 1/2";
    throw InvalidStateError(os.str());
  }
  return CovarianceMatrix(std::move(symmetric));
}

CovarianceMatrix CovarianceMatrix::vacuum(int modes) {
  if (modes <= 0) throw DomainError("mode count must be positive");
  return CovarianceMatrix(0.5 * MatrixXd::Identity(2 * modes, 2 * modes));
}

CovarianceMatrix CovarianceMatrix::thermal(double energy) {
  require_energy(energy);
  return CovarianceMatrix((energy + 0.5) * MatrixXd::Identity(2, 2));
}

// --- SymplecticMatrix ------------------------------------------------------

MatrixXd symplectic_form(int modes) {
  if (modes <= 0) throw DomainError("mode count must be positive");
  MatrixXd delta = MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    delta(2 * k, 2 * k + 1) = 1.0;
    delta(2 * k + 1, 2 * k) = -1.0;
  }
  return delta;
}

SymplecticMatrix SymplecticMatrix::from_matrix(const MatrixXd& s) {
  if (s.rows() != s.cols() || s.rows() == 0 || s.rows() % 2 != 0) {
    throw DomainError("symplectic matrix must be square with even, positive dimension");
  }
  const MatrixXd delta = symplectic_form(static_cast<int>(s.rows() / 2));
  const double scale = std::max(1.0, s.squaredNorm() / static_cast<double>(s.rows()));
  if ((s * delta * s.transpose() - delta).cwiseAbs().maxCoeff() > kSymplecticTolerance * scale) {
    throw DomainError("matrix does not preserve the symplectic form");
  }
  return SymplecticMatrix(s);
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  if (modes <= 0) throw DomainError("mode count must be positive");
  return SymplecticMatrix(MatrixXd::Identity(2 * modes, 2 * modes));
}

SymplecticMatrix SymplecticMatrix::embed(int total_modes, int first, int second) const {
  if (modes() != 2) throw DomainError("embed requires a two-mode symplectic matrix");
  if (first == second || first < 0 || second < 0 || first >= total_modes || second >= total_modes) {
    throw DomainError("embed target modes out of range");
  }
  MatrixXd big = MatrixXd::Identity(2 * total_modes, 2 * total_modes);
  const int target[2] = {first, second};
  for (int bi = 0; bi < 2; ++bi) {
    for (int bj = 0; bj < 2; ++bj) {
      big.block<2, 2>(2 * target[bi], 2 * target[bj]) = s_.block<2, 2>(2 * bi, 2 * bj);
    }
  }
  return SymplecticMatrix(std::move(big));
}

// --- operations ------------------------------------------------------------

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  return symplectic_spectrum(sigma.matrix());
}

Nats gaussian_entropy(const CovarianceMatrix& sigma) {
  // Entries carry roundoff of order eps * |sigma|, so a pure mode comes out
  // with nu - 1/2 of that order, and g(x) ~ x ln(1/x) amplifies it. Modes this
  // close to pure are treated as pure.
  const double pure_floor = kPureModeTolerance * std::max(1.0, sigma.matrix().cwiseAbs().maxCoeff());
  Nats total = 0.0;
  for (double nu : symplectic_eigenvalues(sigma)) {
    const double excess = nu - 0.5;
    if (excess > pure_floor) total += thermal_entropy(excess);
  }
  return total;
}

CovarianceMatrix marginal(const CovarianceMatrix& sigma, std::span<const int> modes) {
  if (modes.empty()) throw DomainError("marginal needs at least one mode");
  const int n = sigma.modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= n) throw DomainError("marginal mode index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[i] == modes[j]) throw DomainError("marginal mode listed twice");
    }
  }
  const auto k = static_cast<Eigen::Index>(modes.size());
  MatrixXd sub(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      sub.block<2, 2>(2 * i, 2 * j) = sigma.matrix().block<2, 2>(2 * modes[i], 2 * modes[j]);
    }
  }
  // A principal submatrix of a valid covariance matrix is valid.
  return CovarianceMatrix::from_matrix(sub);
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  const Eigen::Index na = a.matrix().rows();
  const Eigen::Index nb = b.matrix().rows();
  MatrixXd m = MatrixXd::Zero(na + nb, na + nb);
  m.topLeftCorner(na, na) = a.matrix();
  m.bottomRightCorner(nb, nb) = b.matrix();
  return CovarianceMatrix::from_matrix(m);
}

SymplecticMatrix beam_splitter_symplectic(double eta) {
  require_transmissivity(eta);
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1.0 - eta);
  MatrixXd s(4, 4);
  s << t, 0, r, 0,
       0, t, 0, r,
       -r, 0, t, 0,
       0, -r, 0, t;
  return SymplecticMatrix::from_matrix(s);
}

SymplecticMatrix two_mode_squeezer_symplectic(double kappa) {
  require_gain(kappa);
  const double c = std::sqrt(kappa);
  const double s = std::sqrt(kappa - 1.0);
  // b^dagger conjugates the partner mode: Q couples to Q, P to -P.
  MatrixXd m(4, 4);
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return SymplecticMatrix::from_matrix(m);
}

CovarianceMatrix apply_symplectic(const SymplecticMatrix& s, const CovarianceMatrix& sigma) {
  if (s.matrix().rows() != sigma.matrix().rows()) {
    throw DomainError("symplectic matrix and covariance matrix dimensions differ");
  }
  // Accumulate in extended precision so each entry is rounded once.
  using MatrixXl = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixXl sl = s.matrix().cast<long double>();
  const MatrixXl out = sl * sigma.matrix().cast<long double>() * sl.transpose();
  return CovarianceMatrix::from_matrix((0.5L * (out + out.transpose())).cast<double>());
}

CovarianceMatrix attenuator_cov(const CovarianceMatrix& sigma, double eta) {
  require_one_mode(sigma);
  require_transmissivity(eta);
  return CovarianceMatrix::from_matrix(eta * sigma.matrix() + 0.5 * (1.0 - eta) * MatrixXd::Identity(2, 2));
}

CovarianceMatrix amplifier_cov(const CovarianceMatrix& sigma, double kappa) {
  require_one_mode(sigma);
  require_gain(kappa);
  return CovarianceMatrix::from_matrix(kappa * sigma.matrix() + 0.5 * (kappa - 1.0) * MatrixXd::Identity(2, 2));
}

CovarianceMatrix amplifier_complement_cov(const CovarianceMatrix& sigma, double kappa) {
  require_one_mode(sigma);
  require_gain(kappa);
  const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  return CovarianceMatrix::from_matrix((kappa - 1.0) * z * sigma.matrix() * z +
                                       0.5 * kappa * MatrixXd::Identity(2, 2));
}

}  // namespace gaussq
