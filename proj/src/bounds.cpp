#include "gaussq/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gaussq/errors.hpp"
#include "gaussq/minimize.hpp"

namespace gaussq {

ExtendedNats ExtendedNats::finite(Nats value) {
  if (!std::isfinite(value)) throw DomainError("ExtendedNats::finite needs a finite value");
  return ExtendedNats(value, false);
}

Nats ExtendedNats::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite ExtendedNats");
  return value_;
}

double ExtendedNats::as_double() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::conditional_epi: return "conditional-epi";
    case Provenance::gaussian_extension: return "gaussian-extension";
    case Provenance::tms_mapping: return "tms-mapping";
    case Provenance::channel_limit: return "channel-limit";
    case Provenance::classical_extension: return "classical-extension";
    case Provenance::conjecture_dependent: return "conjecture-dependent";
    case Provenance::comparison: return "comparison";
  }
  return "unknown";
}

BoundReport esq_bounds_tms(double kappa, double energy) {
  require_gain(kappa);
  require_energy(energy);
  BoundReport r;
  r.lower = ExtendedNats::finite(std::log1p(2.0 * (kappa - 1.0)));
  r.upper = ExtendedNats::finite(thermal_entropy((kappa - 0.5) * energy + kappa - 1.0) -
                                 thermal_entropy(0.5 * energy));
  r.provenance = {Provenance::conditional_epi, Provenance::gaussian_extension};
  r.parameters = {{"kappa", kappa}, {"energy", energy}};
  return r;
}

TmsParams tms_equivalent_params(const ChannelParam& channel, double energy) {
  require_energy(energy);
  switch (channel.kind()) {
    case ChannelKind::attenuator: {
      const double eta = channel.eta();
      const double lost = (1.0 - eta) * energy;
      return {(energy + 1.0) / (lost + 1.0), lost};
    }
    case ChannelKind::amplifier: {
      const double kappa = channel.kappa();
      return {kappa * (energy + 1.0) / ((kappa - 1.0) * energy + kappa), (kappa - 1.0) * (energy + 1.0)};
    }
    case ChannelKind::amplifier_complement:
      break;
  }
  throw DomainError("channel-state bounds are defined for the attenuator and the amplifier only");
}

BoundReport esq_bounds_channel_state(const ChannelParam& channel, double energy) {
  require_energy(energy);
  BoundReport r;
  switch (channel.kind()) {
    case ChannelKind::attenuator: {
      const double eta = channel.eta();
      r.lower = ExtendedNats::finite(std::log1p(2.0 * eta * energy / ((1.0 - eta) * energy + 1.0)));
      r.upper = ExtendedNats::finite(thermal_entropy(0.5 * (1.0 + eta) * energy) -
                                     thermal_entropy(0.5 * (1.0 - eta) * energy));
      r.parameters = {{"eta", eta}, {"energy", energy}};
      break;
    }
    case ChannelKind::amplifier: {
      const double kappa = channel.kappa();
      r.lower = ExtendedNats::finite(std::log1p(2.0 * energy / ((kappa - 1.0) * energy + kappa)));
      r.upper = ExtendedNats::finite(thermal_entropy(0.5 * ((kappa + 1.0) * energy + kappa - 1.0)) -
                                     thermal_entropy(0.5 * (kappa - 1.0) * (energy + 1.0)));
      r.parameters = {{"kappa", kappa}, {"energy", energy}};
      break;
    }
    case ChannelKind::amplifier_complement:
      throw DomainError("channel-state bounds are defined for the attenuator and the amplifier only");
  }
  r.provenance = {Provenance::tms_mapping, Provenance::conditional_epi, Provenance::gaussian_extension};
  return r;
}

ExtendedNats channel_esq(const ChannelParam& channel) {
  switch (channel.kind()) {
    case ChannelKind::attenuator: {
      const double eta = channel.eta();
      if (eta == 1.0) return ExtendedNats::infinity();
      // ln((1+eta)/(1-eta)) = log1p(2 eta / (1 - eta))
      return ExtendedNats::finite(std::log1p(2.0 * eta / (1.0 - eta)));
    }
    case ChannelKind::amplifier: {
      const double kappa = channel.kappa();
      if (kappa == 1.0) return ExtendedNats::infinity();
      return ExtendedNats::finite(std::log1p(2.0 / (kappa - 1.0)));
    }
    case ChannelKind::amplifier_complement:
      break;
  }
  throw DomainError("channel squashed entanglement is defined for the attenuator and the amplifier only");
}

ExtendedNats secret_key_capacity(const ChannelParam& channel) {
  switch (channel.kind()) {
    case ChannelKind::attenuator: {
      const double eta = channel.eta();
      if (eta == 1.0) return ExtendedNats::infinity();
      return ExtendedNats::finite(-std::log1p(-eta));
    }
    case ChannelKind::amplifier: {
      const double kappa = channel.kappa();
      if (kappa == 1.0) return ExtendedNats::infinity();
      return ExtendedNats::finite(std::log1p(1.0 / (kappa - 1.0)));
    }
    case ChannelKind::amplifier_complement:
      break;
  }
  throw DomainError("secret-key capacity is quoted for the attenuator and the amplifier only");
}

BoundReport channel_report(const ChannelParam& channel) {
  BoundReport r;
  const ExtendedNats value = channel_esq(channel);
  r.lower = value;
  r.upper = value;
  r.exact = value;
  r.comparison = secret_key_capacity(channel);
  r.provenance = {Provenance::channel_limit, Provenance::comparison};
  r.parameters = {{channel.kind() == ChannelKind::attenuator ? "eta" : "kappa", channel.parameter()}};
  return r;
}

double find_e_kappa(double kappa) {
  require_gain(kappa);
  if (kappa == 1.0) throw DomainError("kappa == 1: the classical objective vanishes and has no unique minimiser");
  const auto objective = [kappa](double s) { return classical_extension_cmi(kappa, thermal_energy_for_entropy(s)); };
  // The slope in s runs from negative at s = 0 to positive at large s; grow
  // the bracket until a forward difference turns upward.
  double s_hi = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double step = 1e-6 * std::max(1.0, s_hi);
    if (objective(s_hi + step) > objective(s_hi)) break;
    s_hi *= 2.0;
  }
  return thermal_energy_for_entropy(golden_section_minimize(objective, 0.0, s_hi, kMinimizerTolerance).argmin);
}

ClassicalEsq classical_esq(double kappa, double energy) {
  require_gain(kappa);
  require_energy(energy);
  MinimizerResult m;
  if (kappa == 1.0) {
    m.degenerate = true;
    return {0.0, m};
  }
  m.e_kappa = find_e_kappa(kappa);
  m.clipped = energy < m.e_kappa;
  m.argmin_x = m.clipped ? energy : m.e_kappa;
  m.min_value = classical_extension_cmi(kappa, m.argmin_x);
  return {0.5 * m.min_value, m};
}

BoundReport classical_esq_report(double kappa, double energy) {
  const ClassicalEsq c = classical_esq(kappa, energy);
  BoundReport r;
  r.lower = ExtendedNats::finite(c.value);
  r.upper = r.lower;
  r.exact = r.lower;
  r.provenance = {Provenance::classical_extension, Provenance::conjecture_dependent};
  r.parameters = {{"kappa", kappa}, {"energy", energy}};
  return r;
}

double separation_check(double kappa, double energy) {
  return classical_esq(kappa, energy).value - esq_bounds_tms(kappa, energy).upper.value();
}

}  // namespace gaussq
