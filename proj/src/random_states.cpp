#include "gaussq/random_states.hpp"

#include <algorithm>
#include <complex>
#include <numeric>

#include "gaussq/errors.hpp"

namespace gaussq {

using Eigen::MatrixXcd;

MatrixXcd haar_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXcd z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) z(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<MatrixXcd> qr(z);
  MatrixXcd q = qr.householderQ();
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

TruncatedState random_fock_state(std::mt19937_64& rng, const std::vector<int>& dims, int rotations) {
  if (dims.empty()) throw DomainError("random state needs at least one mode");
  int total = 1;
  for (int d : dims) {
    if (d < 1) throw DomainError("mode dimension must be positive");
    total *= d;
  }
  std::vector<int> basis(static_cast<std::size_t>(total));
  std::iota(basis.begin(), basis.end(), 0);
  std::shuffle(basis.begin(), basis.end(), rng);
  const int support = std::uniform_int_distribution<int>(1, total)(rng);

  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(support));
  for (double& x : w) x = gamma(rng);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  MatrixXcd rho = MatrixXcd::Zero(total, total);
  for (int k = 0; k < support; ++k) rho(basis[k], basis[k]) = w[k] / sum;

  for (int t = 0; t < rotations && total >= 2; ++t) {
    const int size = std::uniform_int_distribution<int>(2, std::min(4, total))(rng);
    std::shuffle(basis.begin(), basis.end(), rng);
    const MatrixXcd u = haar_unitary(rng, size);
    // rho -> U rho U^dag with U acting on the chosen basis states.
    MatrixXcd rows(size, total);
    for (int i = 0; i < size; ++i) rows.row(i) = rho.row(basis[i]);
    rows = (u * rows).eval();
    for (int i = 0; i < size; ++i) rho.row(basis[i]) = rows.row(i);
    MatrixXcd cols(total, size);
    for (int i = 0; i < size; ++i) cols.col(i) = rho.col(basis[i]);
    cols = (cols * u.adjoint()).eval();
    for (int i = 0; i < size; ++i) rho.col(basis[i]) = cols.col(i);
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return TruncatedState(dims, std::move(rho), 0.0);
}

std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace gaussq
