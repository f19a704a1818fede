#include "gaussq/gaussian_states.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gaussq/errors.hpp"
#include "gaussq/params.hpp"

namespace gaussq {

namespace {

using Eigen::Matrix2d;
using Eigen::MatrixXd;

const Matrix2d kPauliZ = Eigen::Vector2d(1.0, -1.0).asDiagonal();

// [[a I, c Z], [c Z, b I]]: the shape of every two-mode state in this file.
CovarianceMatrix two_mode_block(double a, double b, double c) {
  MatrixXd m(4, 4);
  m.topLeftCorner<2, 2>() = a * Matrix2d::Identity();
  m.bottomRightCorner<2, 2>() = b * Matrix2d::Identity();
  m.topRightCorner<2, 2>() = c * kPauliZ;
  m.bottomLeftCorner<2, 2>() = c * kPauliZ;
  return CovarianceMatrix::from_matrix(m);
}

std::vector<std::string> concat(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::vector<std::string> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

GaussianState::GaussianState(CovarianceMatrix covariance, std::vector<std::string> labels)
    : GaussianState(covariance, Eigen::VectorXd::Zero(2 * covariance.modes()), std::move(labels)) {}

GaussianState::GaussianState(CovarianceMatrix covariance, Eigen::VectorXd mean, std::vector<std::string> labels)
    : covariance_(std::move(covariance)), mean_(std::move(mean)), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != covariance_.modes()) {
    throw DomainError("label count does not match mode count");
  }
  if (mean_.size() != 2 * covariance_.modes()) throw DomainError("mean vector length does not match mode count");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw DomainError("mode labels must be distinct");
}

int GaussianState::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DomainError("no mode labelled '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

GaussianState GaussianState::marginal(const std::vector<std::string>& keep) const {
  std::vector<int> idx;
  idx.reserve(keep.size());
  for (const auto& label : keep) idx.push_back(index_of(label));
  CovarianceMatrix sub = gaussq::marginal(covariance_, idx);
  Eigen::VectorXd mu(2 * static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    mu.segment<2>(2 * static_cast<Eigen::Index>(k)) = mean_.segment<2>(2 * idx[k]);
  }
  return GaussianState(std::move(sub), std::move(mu), keep);
}

Nats GaussianState::entropy(const std::vector<std::string>& modes) const {
  if (modes.empty()) return 0.0;
  return gaussian_entropy(marginal(modes).covariance());
}

GaussianState thermal_state(double energy) {
  return GaussianState(CovarianceMatrix::thermal(energy), {"A"});
}

GaussianState tms_thermal_state(double kappa, double energy) {
  require_gain(kappa);
  require_energy(energy);
  const double n = energy + 1.0;
  return GaussianState(two_mode_block(kappa * n - 0.5, (kappa - 1.0) * n + 0.5, n * std::sqrt(kappa * (kappa - 1.0))),
                       {"A", "B"});
}

GaussianState gamma_attenuated(double eta, double energy) {
  require_transmissivity(eta);
  require_energy(energy);
  return GaussianState(two_mode_block(energy + 0.5, eta * energy + 0.5, std::sqrt(eta * energy * (energy + 1.0))),
                       {"A", "B"});
}

GaussianState gamma_amplified(double kappa, double energy) {
  require_gain(kappa);
  require_energy(energy);
  return GaussianState(two_mode_block(kappa * energy + kappa - 0.5, energy + 0.5,
                                      std::sqrt(kappa * energy * (energy + 1.0))),
                       {"A", "B"});
}

GaussianState attenuated_tmsv(double energy, double eta) {
  require_energy(energy);
  require_transmissivity(eta);
  return GaussianState(two_mode_block(energy + 0.5, eta * energy + 0.5, std::sqrt(eta * energy * (energy + 1.0))),
                       {"A", "R"});
}

GaussianState extension_family(double kappa, double energy, double eta) {
  require_gain(kappa);
  const GaussianState ar = attenuated_tmsv(energy, eta);
  // Order A, B, R with B in vacuum.
  MatrixXd m = MatrixXd::Zero(6, 6);
  const MatrixXd& s = ar.covariance().matrix();
  m.block<2, 2>(0, 0) = s.block<2, 2>(0, 0);
  m.block<2, 2>(0, 4) = s.block<2, 2>(0, 2);
  m.block<2, 2>(4, 0) = s.block<2, 2>(2, 0);
  m.block<2, 2>(4, 4) = s.block<2, 2>(2, 2);
  m.block<2, 2>(2, 2) = 0.5 * Matrix2d::Identity();
  const CovarianceMatrix abr = CovarianceMatrix::from_matrix(m);
  const SymplecticMatrix squeeze = two_mode_squeezer_symplectic(kappa).embed(3, 0, 1);
  return GaussianState(apply_symplectic(squeeze, abr), {"A", "B", "R"});
}

Nats gaussian_cmi(const GaussianState& state, const std::vector<std::string>& a,
                  const std::vector<std::string>& b, const std::vector<std::string>& r) {
  if (a.empty() || b.empty()) throw DomainError("conditional mutual information needs nonempty A and B parts");
  std::set<std::string> all;
  std::size_t total = 0;
  for (const auto* part : {&a, &b, &r}) {
    all.insert(part->begin(), part->end());
    total += part->size();
  }
  if (all.size() != total) throw DomainError("CMI parts overlap");
  return state.entropy(concat(a, r)) + state.entropy(concat(b, r)) - state.entropy(r) -
         state.entropy(concat(concat(a, b), r));
}

Nats conditional_entropy(const GaussianState& state, const std::vector<std::string>& a,
                         const std::vector<std::string>& r) {
  return state.entropy(concat(a, r)) - state.entropy(r);
}

}  // namespace gaussq
