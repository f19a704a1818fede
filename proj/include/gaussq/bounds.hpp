#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaussq/entropics.hpp"
#include "gaussq/params.hpp"

namespace gaussq {

/// Entropy value that may be +infinity (the squashed entanglement of the
/// identity channel). Infinity is a state of the type, never an overflow.
class ExtendedNats {
 public:
  static ExtendedNats finite(Nats value);
  static ExtendedNats infinity() noexcept { return ExtendedNats(0.0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Throws std::logic_error when infinite.
  Nats value() const;
  /// +inf as a double, for comparisons.
  double as_double() const noexcept;

  friend bool operator==(const ExtendedNats&, const ExtendedNats&) = default;

 private:
  ExtendedNats(double value, bool infinite) : value_(value), infinite_(infinite) {}

  double value_;
  bool infinite_;
};

/// Where a reported number comes from.
enum class Provenance {
  conditional_epi,       // lower bound from the conditional entropy power inequality
  gaussian_extension,    // upper bound from the attenuated-purification extension
  tms_mapping,           // channel output state rewritten as a squeezed thermal state
  channel_limit,         // infinite-energy limit of the channel-state bounds
  classical_extension,   // optimal displaced-thermal classical extension
  conjecture_dependent,  // relies on the unproven minimum-output-entropy conjecture
  comparison,            // literature constant quoted for comparison only
};

std::string_view to_string(Provenance p);

struct BoundReport {
  ExtendedNats lower = ExtendedNats::finite(0.0);
  ExtendedNats upper = ExtendedNats::finite(0.0);
  /// Only proven exact values; conjectured ones stay in `upper`.
  std::optional<ExtendedNats> exact;
  /// Secret-key capacity for channel reports.
  std::optional<ExtendedNats> comparison;
  std::vector<Provenance> provenance;
  std::vector<std::pair<std::string, double>> parameters;
};

/// Squashed-entanglement bounds for the squeezed thermal state:
/// lower ln(2 kappa - 1), upper g((kappa - 1/2) E + kappa - 1) - g(E/2).
BoundReport esq_bounds_tms(double kappa, double energy);

struct TmsParams {
  double kappa;
  double energy;
};

/// The squeezed thermal state equal to the output of `channel` on half of a
/// two-mode squeezed vacuum with energy E per mode.
TmsParams tms_equivalent_params(const ChannelParam& channel, double energy);

/// Bounds for the channel output state of tms_equivalent_params.
BoundReport esq_bounds_channel_state(const ChannelParam& channel, double energy);

/// Squashed entanglement of the attenuator, ln((1+eta)/(1-eta)), or of the
/// amplifier, ln((kappa+1)/(kappa-1)). Infinite for the identity channel.
ExtendedNats channel_esq(const ChannelParam& channel);

/// ln(1/(1-eta)) and ln(kappa/(kappa-1)).
ExtendedNats secret_key_capacity(const ChannelParam& channel);

/// Full channel report: exact value plus the key-capacity comparison.
BoundReport channel_report(const ChannelParam& channel);

/// Minimiser of classical_extension_cmi over [0, E].
struct MinimizerResult {
  double argmin_x = 0.0;
  Nats min_value = 0.0;
  /// The constraint x <= E binds (E < e_kappa).
  bool clipped = false;
  /// Unconstrained minimiser; 0 when degenerate.
  double e_kappa = 0.0;
  /// kappa == 1: the objective vanishes identically.
  bool degenerate = false;
};

/// Golden-section tolerance in the entropy variable s = g(x).
inline constexpr double kMinimizerTolerance = 1e-10;

/// Unconstrained minimiser of classical_extension_cmi(kappa, .). The search
/// runs in s = g(x), where the objective is strictly convex. Throws
/// DomainError for kappa <= 1.
double find_e_kappa(double kappa);

struct ClassicalEsq {
  Nats value;
  MinimizerResult minimizer;
};

/// Classical squashed entanglement of the squeezed thermal state:
/// (1/2) min over x in [0, E] of classical_extension_cmi(kappa, x).
ClassicalEsq classical_esq(double kappa, double energy);

/// Report for the classical squashed entanglement. The regularised value is
/// the same number under the minimum-output-entropy conjecture.
BoundReport classical_esq_report(double kappa, double energy);

/// classical_esq - Gaussian-extension upper bound. Positive for kappa > 1,
/// E > 0; zero when kappa == 1.
double separation_check(double kappa, double energy);

}  // namespace gaussq
