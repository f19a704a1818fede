#include "gaussq/fock_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "gaussq/errors.hpp"
#include "gaussq/params.hpp"

namespace gaussq {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

// Amplitude of |a, b, r, f>.
struct Amplitude {
  int a, b, r, f;
  double value;
};

// -sum p ln p over the nonzero eigenvalues of M M^T, using the smaller Gram
// matrix. `scale` divides the eigenvalues (renormalisation).
Nats gram_entropy(const MatrixXd& m, double scale) {
  if (m.size() == 0) return 0.0;
  const MatrixXd gram = m.rows() <= m.cols() ? MatrixXd(m * m.transpose()) : MatrixXd(m.transpose() * m);
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  Nats s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    const double p = lambda / scale;
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

// Digits of an amplitude in mode order A, B, R, F and the charges that the
// construction conserves.
constexpr int kCharge[4] = {1, -1, -1, -1};
int digit(const Amplitude& x, int mode) { return mode == 0 ? x.a : mode == 1 ? x.b : mode == 2 ? x.r : x.f; }

// Entropy of the modes in `mask` (bit m for mode m) of the pure state. The
// reduced state is block diagonal in the subset charge; each block is the
// Gram matrix of a (subset digits) x (complement digits) amplitude matrix.
Nats subset_entropy(const std::vector<Amplitude>& psi, int cutoff, double scale, unsigned mask) {
  mask &= 0xFu;
  if (std::popcount(mask) > 2) mask ^= 0xFu;  // same spectrum
  if (mask == 0) return 0.0;
  const unsigned other = mask ^ 0xFu;
  const auto encode = [cutoff](const Amplitude& x, unsigned m) {
    long long key = 0;
    for (int mode = 0; mode < 4; ++mode) {
      if (m & (1u << mode)) key = key * cutoff + digit(x, mode);
    }
    return key;
  };
  const auto charge = [mask](const Amplitude& x) {
    int q = 0;
    for (int mode = 0; mode < 4; ++mode) {
      if (mask & (1u << mode)) q += kCharge[mode] * digit(x, mode);
    }
    return q;
  };
  std::vector<const Amplitude*> order;
  order.reserve(psi.size());
  for (const auto& x : psi) order.push_back(&x);
  std::stable_sort(order.begin(), order.end(),
                   [&](const Amplitude* l, const Amplitude* r) { return charge(*l) < charge(*r); });

  const std::size_t keys = static_cast<std::size_t>(cutoff) * cutoff;
  std::vector<int> row_index(keys, -1);
  std::unordered_map<long long, int> col_index;
  Nats total = 0.0;
  for (std::size_t begin = 0; begin < order.size();) {
    const int q = charge(*order[begin]);
    std::size_t end = begin;
    while (end < order.size() && charge(*order[end]) == q) ++end;
    std::vector<long long> rows_used;
    col_index.clear();
    for (std::size_t i = begin; i < end; ++i) {
      const long long rk = encode(*order[i], mask), ck = encode(*order[i], other);
      if (row_index[rk] < 0) {
        row_index[rk] = static_cast<int>(rows_used.size());
        rows_used.push_back(rk);
      }
      col_index.emplace(ck, static_cast<int>(col_index.size()));
    }
    MatrixXd m = MatrixXd::Zero(static_cast<Eigen::Index>(rows_used.size()), static_cast<Eigen::Index>(col_index.size()));
    for (std::size_t i = begin; i < end; ++i) {
      m(row_index[encode(*order[i], mask)], col_index.at(encode(*order[i], other))) += order[i]->value;
    }
    total += gram_entropy(m, scale);
    for (long long k : rows_used) row_index[k] = -1;
    begin = end;
  }
  return total;
}

}  // namespace

double extension_max_energy(double kappa, double energy) {
  require_gain(kappa);
  require_energy(energy);
  return std::max(kappa * (energy + 1.0) - 1.0, energy);
}

OracleCmi oracle_cmi_detailed(double kappa, double energy, double eta, int cutoff, const CutoffPolicy& policy) {
  require_transmissivity(eta);
  const double e_max = extension_max_energy(kappa, energy);
  if (cutoff > policy.max_cutoff) {
    std::ostringstream os;
    os << "cutoff " << cutoff << " above the limit " << policy.max_cutoff;
    throw CutoffRefusal(os.str(), policy.max_cutoff);
  }
  require_cutoff(cutoff, e_max, policy);

  // Two-mode squeezed vacuum amplitudes t_n (squeezer of gain E + 1).
  const auto& tmsv = squeezer_vacuum_column(energy + 1.0, 0, cutoff);
  std::vector<Amplitude> psi;
  for (int n = 0; n < cutoff; ++n) {
    const double t = tmsv[n];
    if (t == 0.0) continue;
    const auto& split = beam_splitter_vacuum_column(eta, n);
    const auto& squeeze = squeezer_vacuum_column(kappa, n, cutoff);
    for (int k = 0; k <= n; ++k) {
      if (split[k] == 0.0) continue;
      for (std::size_t j = 0; j < squeeze.size(); ++j) {
        const double v = t * split[k] * squeeze[j];
        if (v != 0.0) psi.push_back({n + static_cast<int>(j), static_cast<int>(j), n - k, k, v});
      }
    }
  }
  double norm = 0.0;
  for (const auto& x : psi) norm += x.value * x.value;

  OracleCmi out;
  out.cutoff = cutoff;
  out.truncated_mass = std::max(0.0, 1.0 - norm);

  const auto entropy = [&](unsigned mask) { return subset_entropy(psi, cutoff, norm, mask); };
  constexpr unsigned kA = 1, kB = 2, kR = 4;
  out.s_a = entropy(kA);
  out.s_b = entropy(kB);
  out.s_r = entropy(kR);
  out.s_ab = entropy(kA | kB);
  out.s_ar = entropy(kA | kR);
  out.s_br = entropy(kB | kR);
  out.s_abr = entropy(kA | kB | kR);
  out.value = out.s_ar + out.s_br - out.s_r - out.s_abr;
  return out;
}

Nats oracle_cmi(double kappa, double energy, double eta, int cutoff, const CutoffPolicy& policy) {
  return oracle_cmi_detailed(kappa, energy, eta, cutoff, policy).value;
}

Quadrature gauss_legendre(int points, double lo, double hi) {
  if (points < 1) throw DomainError("quadrature needs at least one point");
  MatrixXd jacobi = MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(jacobi);
  const double half = 0.5 * (hi - lo);
  Quadrature q;
  q.nodes = (solver.eigenvalues().array() * half + 0.5 * (hi + lo)).matrix();
  q.weights = (2.0 * half * solver.eigenvectors().row(0).array().square()).matrix().transpose();
  return q;
}

double mixture_radius(double spread) { return std::sqrt(spread * std::log(1e10)); }

MatrixXcd displaced_thermal_mixture(double energy, double inner_energy, int cutoff, const PolarGrid& grid) {
  require_energy(energy);
  require_energy(inner_energy);
  if (inner_energy > energy) throw DomainError("inner energy must not exceed the target energy");
  if (cutoff < 1) throw DomainError("Fock cutoff must be positive");
  if (grid.radial < 1 || grid.angular < 1) throw DomainError("quadrature grid must be nonempty");
  const double spread = energy - inner_energy;
  const auto inner = thermal_fock(inner_energy, cutoff).matrix();
  if (spread == 0.0) return inner;

  const double needed = mixture_radius(spread);
  const double radius = grid.radius.value_or(needed);
  if (radius < needed) {
    std::ostringstream os;
    os << "quadrature radius " << radius << " holds less than 1 - 1e-10 of the displacement weight";
    throw QuadratureRefusal(os.str(), needed);
  }

  // Inner thermal state truncated where its populations fall below 1e-17,
  // and a working space wide enough that the truncated displacement is exact
  // to roundoff on the entries we keep.
  const int inner_levels =
      inner_energy == 0.0 ? 1 : std::max(cutoff, static_cast<int>(std::ceil(std::log(1e-17) / std::log(inner_energy / (inner_energy + 1.0)))));
  const double reach = std::sqrt(static_cast<double>(std::max(cutoff, inner_levels))) + radius + 10.0;
  const int work = std::max(cutoff, inner_levels) + static_cast<int>(std::ceil(reach * reach)) + 40;

  // a^dag - a is real antisymmetric tridiagonal: with P = diag(i^k) it equals
  // P (-i T) P^-1 for the real symmetric T with off-diagonals sqrt(k). So
  // D(r) = P V exp(-i r L) V^T P^-1, diagonalised once.
  MatrixXd t = MatrixXd::Zero(work, work);
  for (int k = 1; k < work; ++k) {
    t(k, k - 1) = std::sqrt(static_cast<double>(k));
    t(k - 1, k) = t(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(t);
  const MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd& lambda = solver.eigenvalues();

  std::vector<double> inner_pop(static_cast<std::size_t>(inner_levels));
  {
    const double ratio = inner_energy / (inner_energy + 1.0);
    double p = 1.0 / (inner_energy + 1.0);
    for (int k = 0; k < inner_levels; ++k, p *= ratio) inner_pop[k] = p;
  }
  static const std::complex<double> kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  const Quadrature radial = gauss_legendre(grid.radial, 0.0, radius);
  MatrixXcd radial_sum = MatrixXcd::Zero(cutoff, cutoff);
  const MatrixXd v_rows = v.topRows(cutoff);
  const MatrixXd v_cols = v.topRows(inner_levels);
  for (int i = 0; i < grid.radial; ++i) {
    const double r = radial.nodes[i];
    const double density = std::exp(-r * r / spread) / (std::numbers::pi * spread);
    Eigen::VectorXcd phases(work);
    for (int m = 0; m < work; ++m) phases[m] = std::exp(std::complex<double>(0.0, -r * lambda[m]));
    // D(r)[m, k] for m < cutoff, k < inner_levels.
    MatrixXcd d = v_rows.cast<std::complex<double>>() * phases.asDiagonal() * v_cols.transpose().cast<std::complex<double>>();
    for (int m = 0; m < cutoff; ++m) {
      for (int k = 0; k < inner_levels; ++k) d(m, k) *= kPhase[((m - k) % 4 + 4) % 4];
    }
    const MatrixXcd shifted = d * Eigen::Map<const Eigen::VectorXd>(inner_pop.data(), inner_levels)
                                      .cast<std::complex<double>>()
                                      .asDiagonal() *
                              d.adjoint();
    radial_sum += (radial.weights[i] * r * density) * shifted;
  }

  // Angular integral: rotation by phi multiplies entry (m, n) by
  // exp(-i (m - n) phi); uniform nodes on the circle.
  MatrixXcd out(cutoff, cutoff);
  const double step = 2.0 * std::numbers::pi / grid.angular;
  for (int n = 0; n < cutoff; ++n) {
    for (int m = 0; m < cutoff; ++m) {
      std::complex<double> acc = 0.0;
      for (int a = 0; a < grid.angular; ++a) acc += std::exp(std::complex<double>(0.0, -(m - n) * a * step));
      out(m, n) = step * acc * radial_sum(m, n);
    }
  }
  return out;
}

double verify_displaced_thermal_mixture(double energy, double inner_energy, int cutoff, const PolarGrid& grid) {
  const MatrixXcd mix = displaced_thermal_mixture(energy, inner_energy, cutoff, grid);
  return (mix - thermal_fock(energy, cutoff).matrix()).cwiseAbs().maxCoeff();
}

}  // namespace gaussq
