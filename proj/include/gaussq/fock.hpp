#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gaussq/entropics.hpp"
#include "gaussq/params.hpp"

// Truncated Fock-space route. Multi-mode basis states are ordered with the
// first mode most significant: |n_0, n_1, ...> has index
// ((n_0 * d_1 + n_1) * d_2 + ...).

namespace gaussq {

/// Dense operator on `modes` modes, each truncated to `cutoff` levels.
struct FockOperator {
  int cutoff = 0;
  int modes = 0;
  Eigen::MatrixXcd matrix;

  /// max |U^dagger U - I|.
  double unitarity_defect() const;
};

/// Dense density matrix on a product of truncated oscillators.
class TruncatedState {
 public:
  /// Checks Hermiticity (1e-12) and trace within [1 - tail - 1e-10, 1 + 1e-10];
  /// throws InvalidStateError otherwise. Positivity (eigenvalues >= -1e-10)
  /// is checked by spectral_entropy, which computes the spectrum anyway.
  TruncatedState(std::vector<int> dims, Eigen::MatrixXcd matrix, double tail_bound);

  const std::vector<int>& dims() const noexcept { return dims_; }
  int modes() const noexcept { return static_cast<int>(dims_.size()); }
  /// Levels of mode `k`.
  int cutoff(int k = 0) const { return dims_.at(static_cast<std::size_t>(k)); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  /// Probability mass known to lie outside the truncated space.
  double tail_bound() const noexcept { return tail_bound_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  std::vector<int> dims_;
  Eigen::MatrixXcd matrix_;
  double tail_bound_;
};

/// Lowering operator: sqrt(n) on the superdiagonal.
FockOperator ladder(int cutoff);
/// diag(0, 1, ..., N-1).
FockOperator number_operator(int cutoff);

/// Thermal state truncated to N levels, unnormalised beyond the cutoff:
/// tail_bound = (E/(E+1))^N.
TruncatedState thermal_fock(double energy, int cutoff);

/// Von Neumann entropy from the spectrum; negative roundoff eigenvalues are
/// clipped to zero and eigenvalues below 1e-14 are dropped.
Nats spectral_entropy(const TruncatedState& state);

/// Reduced state on the listed modes (kept in increasing mode order).
TruncatedState partial_trace(const TruncatedState& state, const std::vector<int>& keep);

/// rho (x) sigma.
TruncatedState tensor_product(const TruncatedState& a, const TruncatedState& b);

/// Cutoff selection: pick N so the thermal tail (E/(E+1))^N at the largest
/// energy in the computation is below `tail_target`. Explicit cutoffs are
/// refused when that tail exceeds `refusal_tail`.
struct CutoffPolicy {
  double tail_target = 1e-10;
  double refusal_tail = 1e-6;
  int max_cutoff = 256;
  /// Largest per-mode cutoff for which dense two-mode unitaries are built.
  int max_dense_two_mode_cutoff = 64;
};

/// Smallest N with (E/(E+1))^N < policy.tail_target; throws CutoffRefusal if
/// it exceeds policy.max_cutoff.
int select_cutoff(double max_energy, const CutoffPolicy& policy = {});

/// Throws CutoffRefusal unless `cutoff` leaves a thermal tail at most
/// policy.refusal_tail at `max_energy`.
void require_cutoff(int cutoff, double max_energy, const CutoffPolicy& policy = {});

/// (E/(E+1))^N.
double thermal_tail(double energy, int cutoff);

/// exp((a^dag b^dag - a b) arccosh sqrt(kappa)) on two modes of N levels,
/// exponentiated block by block in the sectors of fixed n_a - n_b.
FockOperator squeezer_unitary(double kappa, int cutoff, const CutoffPolicy& policy = {});

/// exp((a^dag b - b^dag a) arccos sqrt(eta)) on two modes of N levels, block
/// by block in the sectors of fixed n_a + n_b.
FockOperator beam_splitter_unitary(double eta, int cutoff, const CutoffPolicy& policy = {});

/// Amplitudes of U_kappa |n, 0>: entry j multiplies |n + j, j>, both modes
/// kept below `cutoff`. Cached.
const std::vector<double>& squeezer_vacuum_column(double kappa, int n, int cutoff);

/// Amplitudes of U_eta |n, 0>: entry k multiplies |n - k, k>. Exact for any
/// cutoff above n (the sector is fully retained). Cached.
const std::vector<double>& beam_splitter_vacuum_column(double eta, int n);

/// Applies the one-mode channel to mode `mode` of `state` through its
/// dilation: vacuum ancilla, sector-resolved unitary, partial trace (over the
/// ancilla, or over the system for the complement). The output cutoff of that
/// mode is `output_cutoff` if given; otherwise it starts at N_in + 16 and
/// grows by a quarter until the population-weighted squared amplitude in the
/// last eighth (at least 8 levels) of the squeezer sectors is below 1e-14.
/// The output tail is that estimate plus the input tail.
TruncatedState apply_channel_fock(const TruncatedState& state, const ChannelParam& channel, int mode = 0,
                                  std::optional<int> output_cutoff = std::nullopt,
                                  const CutoffPolicy& policy = {});

}  // namespace gaussq
