#include "gaussq/params.hpp"

#include <cmath>
#include <sstream>

#include "gaussq/errors.hpp"

namespace gaussq {

namespace {

[[noreturn]] void fail(std::string_view name, double value, std::string_view requirement) {
  std::ostringstream os;
  os << name << " = " << value << " " << requirement;
  throw DomainError(os.str());
}

}  // namespace

double require_finite(double value, std::string_view name) {
  if (!std::isfinite(value)) fail(name, value, "is not finite");
  return value;
}

double require_energy(double energy, std::string_view name) {
  require_finite(energy, name);
  if (energy < 0.0) fail(name, energy, "must be >= 0");
  return energy;
}

double require_gain(double kappa, std::string_view name) {
  require_finite(kappa, name);
  if (kappa < 1.0) fail(name, kappa, "must be >= 1");
  return kappa;
}

double require_transmissivity(double eta, std::string_view name) {
  require_finite(eta, name);
  if (eta < 0.0 || eta > 1.0) fail(name, eta, "must lie in [0, 1]");
  return eta;
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::attenuator: return "attenuator";
    case ChannelKind::amplifier: return "amplifier";
    case ChannelKind::amplifier_complement: return "amplifier_complement";
  }
  return "unknown";
}

ChannelParam ChannelParam::attenuator(double eta) {
  return {ChannelKind::attenuator, require_transmissivity(eta)};
}

ChannelParam ChannelParam::amplifier(double kappa) {
  return {ChannelKind::amplifier, require_gain(kappa)};
}

ChannelParam ChannelParam::amplifier_complement(double kappa) {
  return {ChannelKind::amplifier_complement, require_gain(kappa)};
}

double ChannelParam::eta() const {
  if (kind_ != ChannelKind::attenuator) throw DomainError("channel has no transmissivity");
  return parameter_;
}

double ChannelParam::kappa() const {
  if (kind_ == ChannelKind::attenuator) throw DomainError("channel has no gain");
  return parameter_;
}

}  // namespace gaussq
