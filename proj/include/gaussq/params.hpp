#pragma once

#include <string>
#include <string_view>

namespace gaussq {

/// Validators shared by every module. Each throws DomainError naming the
/// offending argument and returns the value unchanged.
double require_energy(double energy, std::string_view name = "energy");
double require_gain(double kappa, std::string_view name = "kappa");
double require_transmissivity(double eta, std::string_view name = "eta");
double require_finite(double value, std::string_view name);

enum class ChannelKind { attenuator, amplifier, amplifier_complement };

std::string_view to_string(ChannelKind kind);

/// A one-mode noiseless Gaussian channel: the beam-splitter attenuator with
/// transmissivity eta, the two-mode-squeezing amplifier with gain kappa, or
/// the amplifier's complementary channel (output taken from the ancilla).
class ChannelParam {
 public:
  static ChannelParam attenuator(double eta);
  static ChannelParam amplifier(double kappa);
  static ChannelParam amplifier_complement(double kappa);

  ChannelKind kind() const noexcept { return kind_; }
  /// eta for the attenuator, kappa otherwise.
  double parameter() const noexcept { return parameter_; }
  double eta() const;
  double kappa() const;

 private:
  ChannelParam(ChannelKind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  ChannelKind kind_;
  double parameter_;
};

}  // namespace gaussq
