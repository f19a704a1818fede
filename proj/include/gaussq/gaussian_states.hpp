#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gaussq/entropics.hpp"
#include "gaussq/symplectic.hpp"

namespace gaussq {

/// Gaussian state with named modes. Every state built here has zero mean;
/// the mean vector is carried for completeness.
class GaussianState {
 public:
  GaussianState(CovarianceMatrix covariance, std::vector<std::string> labels);
  GaussianState(CovarianceMatrix covariance, Eigen::VectorXd mean, std::vector<std::string> labels);

  const CovarianceMatrix& covariance() const noexcept { return covariance_; }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  int modes() const noexcept { return covariance_.modes(); }

  /// Position of `label`; throws DomainError if absent.
  int index_of(const std::string& label) const;

  /// Reduced state on the named modes, in the given order.
  GaussianState marginal(const std::vector<std::string>& keep) const;

  /// Von Neumann entropy of the reduced state on `modes`; 0 for no modes.
  Nats entropy(const std::vector<std::string>& modes) const;

 private:
  CovarianceMatrix covariance_;
  Eigen::VectorXd mean_;
  std::vector<std::string> labels_;
};

/// One-mode thermal state with mean photon number E, labelled "A".
GaussianState thermal_state(double energy);

/// Thermal state of energy E on A, vacuum on B, two-mode squeezed with gain
/// kappa. Modes "A", "B".
GaussianState tms_thermal_state(double kappa, double energy);

/// Half of the two-mode squeezed vacuum of energy E per mode (A) and the
/// other half (B) sent through the attenuator eta.
GaussianState gamma_attenuated(double eta, double energy);

/// As gamma_attenuated, with B sent through the amplifier kappa.
GaussianState gamma_amplified(double kappa, double energy);

/// Purification of the thermal state on A restricted to A and the
/// transmitted output R of an attenuator eta acting on the purifying mode.
/// Modes "A", "R". Built from its closed-form covariance.
GaussianState attenuated_tmsv(double energy, double eta);

/// Three-mode extension of tms_thermal_state(kappa, E): attenuated_tmsv on
/// (A, R), vacuum on B, then the squeezer on (A, B). Modes "A", "B", "R".
GaussianState extension_family(double kappa, double energy, double eta);

/// I(A;B|R) = S(AR) + S(BR) - S(R) - S(ABR). `r` may be empty.
Nats gaussian_cmi(const GaussianState& state, const std::vector<std::string>& a,
                  const std::vector<std::string>& b, const std::vector<std::string>& r);

/// S(A|R) = S(AR) - S(R).
Nats conditional_entropy(const GaussianState& state, const std::vector<std::string>& a,
                         const std::vector<std::string>& r);

}  // namespace gaussq
