#include "gaussq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaussq/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace gaussq {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

constexpr double kHermitianTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-10;
constexpr double kNegativeEigenvalueTolerance = 1e-10;
constexpr double kEigenvalueFloor = 1e-14;
// Population-weighted mass allowed in the last levels of a squeezer sector
// (the last eighth, at least kEdgeLevels) before the output cutoff is grown.
constexpr double kEdgeMass = 1e-14;
constexpr std::size_t kEdgeLevels = 8;

void require_levels(int cutoff) {
  if (cutoff < 2) throw DomainError("Fock cutoff must be at least 2");
}

long long product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1LL, [](long long a, int b) { return a * b; });
}

// Squeezer block on the sector |d + k, k>, k = 0..size-1: generator
// theta (a^dag b^dag - a b) couples k and k + 1 with sqrt((d+k+1)(k+1)).
MatrixXd squeezer_sector_exponential(double theta, int d, int size) {
  MatrixXd g = MatrixXd::Zero(size, size);
  for (int k = 0; k + 1 < size; ++k) {
    const double c = theta * std::sqrt(static_cast<double>(d + k + 1) * (k + 1));
    g(k + 1, k) = c;
    g(k, k + 1) = -c;
  }
  return g.exp();
}

// Beam-splitter block on the sector |n - k, k>, k = lo..hi: generator
// theta (a^dag b - b^dag a) moves k -> k + 1 with -sqrt((n-k)(k+1)).
MatrixXd beam_splitter_sector_exponential(double theta, int n, int lo, int hi) {
  const int size = hi - lo + 1;
  MatrixXd g = MatrixXd::Zero(size, size);
  for (int k = lo; k < hi; ++k) {
    const double c = theta * std::sqrt(static_cast<double>(n - k) * (k + 1));
    g(k - lo + 1, k - lo) = -c;
    g(k - lo, k - lo + 1) = c;
  }
  return g.exp();
}

// exp(G) e_0 for a real antisymmetric tridiagonal G given by its
// subdiagonal (G[k+1,k] = sub[k] = -G[k,k+1]). Taylor series on steps of
// unit norm; G preserves the norm, so roundoff is the only loss.
std::vector<double> tridiagonal_exp_first_column(const std::vector<double>& sub, int size) {
  std::vector<double> v(static_cast<std::size_t>(size), 0.0);
  v[0] = 1.0;
  double norm = 0.0;
  for (double c : sub) norm = std::max(norm, std::abs(c));
  const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * norm)));
  const double h = 1.0 / steps;
  std::vector<double> term(v.size()), next(v.size());
  const auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int k = 0; k < size; ++k) {
      double acc = 0.0;
      if (k > 0) acc += sub[k - 1] * x[k - 1];
      if (k + 1 < size) acc -= sub[k] * x[k + 1];
      y[k] = h * acc;
    }
  };
  for (int step = 0; step < steps; ++step) {
    term = v;
    for (int order = 1; order <= 60; ++order) {
      apply(term, next);
      double largest = 0.0;
      for (int k = 0; k < size; ++k) {
        term[k] = next[k] / order;
        v[k] += term[k];
        largest = std::max(largest, std::abs(term[k]));
      }
      if (largest < 1e-18) break;
    }
  }
  return v;
}

double squeezer_angle(double kappa) { return std::acosh(std::sqrt(require_gain(kappa))); }
double beam_splitter_angle(double eta) { return std::acos(std::sqrt(require_transmissivity(eta))); }

// Column cache keyed by (kind, parameter, sector, cutoff).
using ColumnKey = std::tuple<int, double, int, int>;
std::mutex g_cache_mutex;
std::map<ColumnKey, std::vector<double>> g_column_cache;

template <class Compute>
const std::vector<double>& cached_column(const ColumnKey& key, Compute&& compute) {
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    const auto it = g_column_cache.find(key);
    if (it != g_column_cache.end()) return it->second;
  }
  std::vector<double> column = compute();
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_column_cache.emplace(key, std::move(column)).first->second;
}

// Strides for row-major multi-indices.
std::vector<long long> strides_of(const std::vector<int>& dims) {
  std::vector<long long> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

// Offsets of all multi-indices over the listed modes, in row-major order of
// those modes, measured with the full-space strides.
std::vector<long long> offsets_over(const std::vector<int>& dims, const std::vector<int>& modes) {
  const auto strides = strides_of(dims);
  std::vector<long long> out{0};
  for (int m : modes) {
    std::vector<long long> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[m]));
    for (long long base : out) {
      for (int level = 0; level < dims[m]; ++level) next.push_back(base + level * strides[m]);
    }
    out = std::move(next);
  }
  return out;
}

// One dilation branch: input level n goes to output level `level` with
// amplitude `amp`, for a fixed environment outcome.
struct Branch {
  int input;
  int output;
  double amp;
};

}  // namespace

double FockOperator::unitarity_defect() const {
  const auto id = MatrixXcd::Identity(matrix.rows(), matrix.cols());
  return (matrix.adjoint() * matrix - id).cwiseAbs().maxCoeff();
}

TruncatedState::TruncatedState(std::vector<int> dims, MatrixXcd matrix, double tail_bound)
    : dims_(std::move(dims)), matrix_(std::move(matrix)), tail_bound_(tail_bound) {
  if (dims_.empty()) throw InvalidStateError("truncated state needs at least one mode");
  for (int d : dims_) {
    if (d < 1) throw InvalidStateError("mode dimension must be positive");
  }
  const long long dim = product(dims_);
  if (matrix_.rows() != dim || matrix_.cols() != dim) throw InvalidStateError("density matrix size does not match the mode cutoffs");
  if (!(tail_bound_ >= 0.0)) throw InvalidStateError("tail bound must be non-negative");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw InvalidStateError("density matrix is not Hermitian");
  }
  const double tr = trace();
  if (tr < 1.0 - tail_bound_ - kTraceTolerance || tr > 1.0 + kTraceTolerance) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " outside [1 - tail, 1] (tail " << tail_bound_ << ")";
    throw InvalidStateError(os.str());
  }
}

FockOperator ladder(int cutoff) {
  require_levels(cutoff);
  MatrixXcd a = MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {cutoff, 1, a};
}

FockOperator number_operator(int cutoff) {
  require_levels(cutoff);
  MatrixXcd n = MatrixXcd::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = static_cast<double>(k);
  return {cutoff, 1, n};
}

double thermal_tail(double energy, int cutoff) {
  require_energy(energy);
  if (energy == 0.0) return 0.0;
  return std::exp(cutoff * std::log(energy / (energy + 1.0)));
}

TruncatedState thermal_fock(double energy, int cutoff) {
  require_energy(energy);
  if (cutoff < 1) throw DomainError("Fock cutoff must be positive");
  MatrixXcd rho = MatrixXcd::Zero(cutoff, cutoff);
  const double ratio = energy / (energy + 1.0);
  double p = 1.0 / (energy + 1.0);
  for (int n = 0; n < cutoff; ++n) {
    rho(n, n) = p;
    p *= ratio;
  }
  return TruncatedState({cutoff}, std::move(rho), thermal_tail(energy, cutoff));
}

Nats spectral_entropy(const TruncatedState& state) {
  // LAPACK's divide-and-conquer Hermitian solver; eigenvalues only.
  MatrixXcd work = state.matrix();
  const auto n = static_cast<lapack_int>(work.rows());
  Eigen::VectorXd eigenvalues(n);
  if (LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, eigenvalues.data()) != 0) {
    throw InvalidStateError("density matrix eigen-decomposition failed");
  }
  if (eigenvalues.minCoeff() < -kNegativeEigenvalueTolerance) {
    throw InvalidStateError("density matrix has a negative eigenvalue beyond roundoff");
  }
  Nats s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda > kEigenvalueFloor) s -= lambda * std::log(lambda);
  }
  // A pure state's eigenvalue can round to 1 + eps.
  return std::max(0.0, s);
}

TruncatedState partial_trace(const TruncatedState& state, const std::vector<int>& keep) {
  if (keep.empty()) throw DomainError("partial trace needs at least one kept mode");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) throw DomainError("mode kept twice");
  if (kept.front() < 0 || kept.back() >= state.modes()) throw DomainError("kept mode out of range");
  std::vector<int> traced;
  for (int m = 0; m < state.modes(); ++m) {
    if (!std::binary_search(kept.begin(), kept.end(), m)) traced.push_back(m);
  }
  const auto rows = offsets_over(state.dims(), kept);
  const auto sums = offsets_over(state.dims(), traced);
  const auto n = static_cast<Eigen::Index>(rows.size());
  MatrixXcd out = MatrixXcd::Zero(n, n);
  const MatrixXcd& rho = state.matrix();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      std::complex<double> acc = 0.0;
      for (long long t : sums) acc += rho(rows[i] + t, rows[j] + t);
      out(i, j) = acc;
    }
  }
  std::vector<int> dims;
  for (int m : kept) dims.push_back(state.dims()[m]);
  return TruncatedState(std::move(dims), std::move(out), state.tail_bound());
}

TruncatedState tensor_product(const TruncatedState& a, const TruncatedState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  MatrixXcd m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  const double tail = std::min(1.0, a.tail_bound() + b.tail_bound());
  return TruncatedState(std::move(dims), std::move(m), tail);
}

int select_cutoff(double max_energy, const CutoffPolicy& policy) {
  require_energy(max_energy);
  if (max_energy == 0.0) return 2;
  const double per_level = std::log(max_energy / (max_energy + 1.0));
  const double needed = std::floor(std::log(policy.tail_target) / per_level) + 1.0;
  const int n = needed > 1e9 ? 1000000000 : std::max(2, static_cast<int>(needed));
  if (n > policy.max_cutoff) {
    std::ostringstream os;
    os << "energy " << max_energy << " needs cutoff " << n << ", above the limit " << policy.max_cutoff;
    throw CutoffRefusal(os.str(), n);
  }
  return n;
}

void require_cutoff(int cutoff, double max_energy, const CutoffPolicy& policy) {
  require_levels(cutoff);
  if (thermal_tail(max_energy, cutoff) > policy.refusal_tail) {
    CutoffPolicy strict = policy;
    strict.max_cutoff = 1000000000;
    std::ostringstream os;
    os << "cutoff " << cutoff << " leaves thermal tail " << thermal_tail(max_energy, cutoff) << " at energy "
       << max_energy << " (limit " << policy.refusal_tail << ")";
    throw CutoffRefusal(os.str(), select_cutoff(max_energy, strict));
  }
}

FockOperator squeezer_unitary(double kappa, int cutoff, const CutoffPolicy& policy) {
  require_levels(cutoff);
  if (cutoff > policy.max_dense_two_mode_cutoff) {
    throw CutoffRefusal("dense two-mode unitary too large", policy.max_dense_two_mode_cutoff);
  }
  const double theta = squeezer_angle(kappa);
  const int n = cutoff;
  MatrixXcd u = MatrixXcd::Zero(n * n, n * n);
  for (int d = -(n - 1); d <= n - 1; ++d) {
    const int a = std::abs(d);
    const int size = n - a;
    const MatrixXd block = squeezer_sector_exponential(theta, a, size);
    const auto index = [&](int k) { return d >= 0 ? (a + k) * n + k : k * n + k + a; };
    for (int j = 0; j < size; ++j) {
      for (int i = 0; i < size; ++i) u(index(i), index(j)) = block(i, j);
    }
  }
  return {cutoff, 2, u};
}

FockOperator beam_splitter_unitary(double eta, int cutoff, const CutoffPolicy& policy) {
  require_levels(cutoff);
  if (cutoff > policy.max_dense_two_mode_cutoff) {
    throw CutoffRefusal("dense two-mode unitary too large", policy.max_dense_two_mode_cutoff);
  }
  const double theta = beam_splitter_angle(eta);
  const int n = cutoff;
  MatrixXcd u = MatrixXcd::Zero(n * n, n * n);
  for (int total = 0; total <= 2 * (n - 1); ++total) {
    const int lo = std::max(0, total - (n - 1));
    const int hi = std::min(total, n - 1);
    const MatrixXd block = beam_splitter_sector_exponential(theta, total, lo, hi);
    const auto index = [&](int k) { return (total - k) * n + k; };
    for (int j = lo; j <= hi; ++j) {
      for (int i = lo; i <= hi; ++i) u(index(i), index(j)) = block(i - lo, j - lo);
    }
  }
  return {cutoff, 2, u};
}

const std::vector<double>& squeezer_vacuum_column(double kappa, int n, int cutoff) {
  if (n < 0 || n >= cutoff) throw DomainError("input level outside the cutoff");
  const double theta = squeezer_angle(kappa);
  return cached_column({0, kappa, n, cutoff}, [&] {
    const int size = cutoff - n;
    std::vector<double> sub(static_cast<std::size_t>(std::max(0, size - 1)));
    for (int k = 0; k + 1 < size; ++k) sub[k] = theta * std::sqrt(static_cast<double>(n + k + 1) * (k + 1));
    return tridiagonal_exp_first_column(sub, size);
  });
}

const std::vector<double>& beam_splitter_vacuum_column(double eta, int n) {
  if (n < 0) throw DomainError("input level must be non-negative");
  const double theta = beam_splitter_angle(eta);
  return cached_column({1, eta, n, n + 1}, [&] {
    std::vector<double> sub(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) sub[k] = -theta * std::sqrt(static_cast<double>(n - k) * (k + 1));
    return tridiagonal_exp_first_column(sub, n + 1);
  });
}

TruncatedState apply_channel_fock(const TruncatedState& state, const ChannelParam& channel, int mode,
                                  std::optional<int> output_cutoff, const CutoffPolicy& policy) {
  if (mode < 0 || mode >= state.modes()) throw DomainError("channel target mode out of range");
  const int n_in = state.dims()[mode];
  const TruncatedState local = partial_trace(state, {mode});
  std::vector<double> population(static_cast<std::size_t>(n_in));
  for (int n = 0; n < n_in; ++n) population[n] = std::max(0.0, local.matrix()(n, n).real());

  const bool is_attenuator = channel.kind() == ChannelKind::attenuator;
  int n_out = n_in;
  double edge_estimate = 0.0;
  // Amplitudes per input level: attenuator entry k -> |n-k, k>, amplifier
  // entry j -> |n+j, j>.
  std::vector<const std::vector<double>*> columns(static_cast<std::size_t>(n_in));

  if (is_attenuator) {
    if (output_cutoff) n_out = *output_cutoff;
    for (int n = 0; n < n_in; ++n) columns[n] = &beam_splitter_vacuum_column(channel.eta(), n);
  } else {
    const double kappa = channel.kappa();
    const auto edge_mass = [&](int cutoff) {
      double total = 0.0;
      for (int n = 0; n < n_in; ++n) {
        columns[n] = &squeezer_vacuum_column(kappa, n, cutoff);
        const auto& c = *columns[n];
        const std::size_t from = c.size() - std::min(c.size(), std::max<std::size_t>(kEdgeLevels, c.size() / 8));
        double mass = 0.0;
        for (std::size_t j = from; j < c.size(); ++j) mass += c[j] * c[j];
        total += population[n] * mass;
      }
      return total;
    };
    if (output_cutoff) {
      if (*output_cutoff < n_in) throw DomainError("amplifier output cutoff must be at least the input cutoff");
      n_out = *output_cutoff;
      edge_estimate = edge_mass(n_out);
    } else {
      n_out = n_in + 16;
      while (true) {
        n_out = std::min(n_out, policy.max_cutoff);
        edge_estimate = edge_mass(n_out);
        if (edge_estimate <= kEdgeMass) break;
        if (n_out >= policy.max_cutoff) {
          throw CutoffRefusal("amplifier output does not fit below the maximum cutoff", 2 * policy.max_cutoff);
        }
        n_out += std::max(8, n_out / 4);
      }
    }
  }

  // Environment outcomes and the branches each induces.
  std::vector<std::vector<Branch>> kraus;
  if (is_attenuator) {
    kraus.resize(static_cast<std::size_t>(n_in));
    for (int n = 0; n < n_in; ++n) {
      const auto& c = *columns[n];
      for (int k = 0; k <= n; ++k) {
        if (n - k < n_out && c[k] != 0.0) kraus[k].push_back({n, n - k, c[k]});
      }
    }
  } else if (channel.kind() == ChannelKind::amplifier) {
    kraus.resize(static_cast<std::size_t>(n_out));
    for (int n = 0; n < n_in; ++n) {
      const auto& c = *columns[n];
      for (std::size_t j = 0; j < c.size(); ++j) kraus[j].push_back({n, n + static_cast<int>(j), c[j]});
    }
  } else {
    // Complement: keep the ancilla (level j), trace the system (level n + j).
    kraus.resize(static_cast<std::size_t>(n_out));
    for (int n = 0; n < n_in; ++n) {
      const auto& c = *columns[n];
      for (std::size_t j = 0; j < c.size(); ++j) kraus[n + j].push_back({n, static_cast<int>(j), c[j]});
    }
  }

  std::vector<int> out_dims = state.dims();
  out_dims[mode] = n_out;
  std::vector<int> others;
  for (int m = 0; m < state.modes(); ++m) {
    if (m != mode) others.push_back(m);
  }
  const auto in_rest = offsets_over(state.dims(), others);
  const auto out_rest = offsets_over(out_dims, others);
  const long long in_stride = strides_of(state.dims())[mode];
  const long long out_stride = strides_of(out_dims)[mode];
  const long long out_dim = product(out_dims);
  MatrixXcd out = MatrixXcd::Zero(out_dim, out_dim);
  const MatrixXcd& rho = state.matrix();
  const std::size_t rest = in_rest.size();

  for (const auto& branches : kraus) {
    for (const Branch& col : branches) {
      for (const Branch& row : branches) {
        const double w = row.amp * col.amp;
        const long long ri = row.input * in_stride, ci = col.input * in_stride;
        const long long ro = row.output * out_stride, co = col.output * out_stride;
        for (std::size_t q = 0; q < rest; ++q) {
          for (std::size_t p = 0; p < rest; ++p) {
            out(ro + out_rest[p], co + out_rest[q]) += w * rho(ri + in_rest[p], ci + in_rest[q]);
          }
        }
      }
    }
  }
  out = 0.5 * (out + out.adjoint()).eval();
  const double tail = std::min(1.0, state.tail_bound() + edge_estimate);
  return TruncatedState(std::move(out_dims), std::move(out), tail);
}

}  // namespace gaussq
