#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaussq/errors.hpp"
#include "gaussq/fock.hpp"
#include "oracles.hpp"

using namespace gaussq;
using Eigen::MatrixXcd;

namespace {

// Whole-space generator exponential: the route the sector blocks avoid.
MatrixXcd full_exponential(const MatrixXcd& a, const MatrixXcd& b, double theta, bool squeezer) {
  const MatrixXcd id = MatrixXcd::Identity(a.rows(), a.cols());
  const MatrixXcd a2 = Eigen::kroneckerProduct(a, id);
  const MatrixXcd b2 = Eigen::kroneckerProduct(id, b);
  MatrixXcd gen = squeezer ? MatrixXcd(a2.adjoint() * b2.adjoint() - a2 * b2)
                           : MatrixXcd(a2.adjoint() * b2 - b2.adjoint() * a2);
  gen *= theta;
  return gen.exp();
}

double binomial(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

TruncatedState fock_number(int level, int cutoff) {
  MatrixXcd m = MatrixXcd::Zero(cutoff, cutoff);
  m(level, level) = 1.0;
  return TruncatedState({cutoff}, m, 0.0);
}

}  // namespace

TEST_CASE("ladder operators") {
  const auto a = ladder(12).matrix;
  const auto n = number_operator(12).matrix;
  CHECK((a.adjoint() * a - n).cwiseAbs().maxCoeff() < 1e-13);
  const MatrixXcd comm = a * a.adjoint() - a.adjoint() * a;
  for (int k = 0; k < 11; ++k) CHECK(std::abs(comm(k, k) - 1.0) < 1e-13);
  CHECK(std::abs(comm(11, 11) + 11.0) < 1e-12);
  CHECK_THROWS_AS(ladder(1), DomainError);
}

TEST_CASE("thermal Fock state entropy") {
  const auto rho = thermal_fock(1.0, 60);
  CHECK(std::abs(spectral_entropy(rho) - oracle::g(1.0)) < 1e-8);
  CHECK(rho.tail_bound() == doctest::Approx(std::pow(0.5, 60)));
  CHECK(spectral_entropy(thermal_fock(0.0, 5)) == 0.0);
}

TEST_CASE("truncated state validation") {
  MatrixXcd m = MatrixXcd::Zero(3, 3);
  m(0, 0) = 0.5;
  CHECK_THROWS_AS(TruncatedState({3}, m, 0.0), InvalidStateError);
  CHECK_NOTHROW(TruncatedState({3}, m, 0.5));
  m(0, 0) = 1.0;
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(TruncatedState({3}, m, 0.0), InvalidStateError);
  CHECK_THROWS_AS(TruncatedState({2}, MatrixXcd::Identity(3, 3) / 3.0, 0.0), InvalidStateError);
  MatrixXcd neg = MatrixXcd::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(spectral_entropy(TruncatedState({2}, neg, 0.0)), InvalidStateError);
}

TEST_CASE("sector unitaries match the whole-space exponential") {
  const int n = 7;
  const auto a = ladder(n).matrix;
  const double kappa = 1.7;
  const double eta = 0.35;
  const auto s = squeezer_unitary(kappa, n);
  const auto b = beam_splitter_unitary(eta, n);
  CHECK((s.matrix - full_exponential(a, a, std::acosh(std::sqrt(kappa)), true)).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((b.matrix - full_exponential(a, a, std::acos(std::sqrt(eta)), false)).cwiseAbs().maxCoeff() < 1e-11);
  CHECK(s.unitarity_defect() < 1e-8);
  CHECK(b.unitarity_defect() < 1e-8);
  CHECK(squeezer_unitary(3.0, 24).unitarity_defect() < 1e-8);
  CHECK_THROWS_AS(squeezer_unitary(2.0, 65), CutoffRefusal);
}

TEST_CASE("vacuum columns against closed forms") {
  const double kappa = 1.5;
  const auto& col = squeezer_vacuum_column(kappa, 0, 120);
  const double e = kappa - 1.0;
  for (int j = 0; j < 30; ++j) {
    CHECK(std::abs(col[j] - std::sqrt(std::pow(e, j) / std::pow(e + 1.0, j + 1))) < 1e-12);
  }
  const double eta = 0.3;
  for (int n : {0, 1, 5, 17}) {
    const auto& bs = beam_splitter_vacuum_column(eta, n);
    REQUIRE(bs.size() == static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
      const double expected = binomial(n, k) * std::pow(eta, n - k) * std::pow(1.0 - eta, k);
      CHECK(std::abs(bs[k] * bs[k] - expected) < 1e-12);
    }
  }
  CHECK(&squeezer_vacuum_column(kappa, 0, 120) == &col);
  // the cached columns agree with the dense sector unitaries
  const auto u = squeezer_unitary(kappa, 9).matrix;
  const auto& c3 = squeezer_vacuum_column(kappa, 3, 9);
  for (int j = 0; j < 6; ++j) CHECK(std::abs(u((3 + j) * 9 + j, 3 * 9) - c3[j]) < 1e-13);
  const auto v = beam_splitter_unitary(eta, 9).matrix;
  const auto& b4 = beam_splitter_vacuum_column(eta, 4);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(v((4 - k) * 9 + k, 4 * 9) - b4[k]) < 1e-13);
}

TEST_CASE("squeezed vacuum marginal is thermal") {
  for (double kappa : {1.2, 1.5, 2.0}) {
    const int n = 40;
    const auto u = squeezer_unitary(kappa, n).matrix;
    MatrixXcd rho = u.col(0) * u.col(0).adjoint();
    const TruncatedState joint({n, n}, rho, 1e-6);
    CHECK(std::abs(spectral_entropy(partial_trace(joint, {0})) - oracle::g(kappa - 1.0)) < 1e-6);
    CHECK(std::abs(spectral_entropy(partial_trace(joint, {1})) - oracle::g(kappa - 1.0)) < 1e-6);
  }
}

TEST_CASE("partial trace and tensor product") {
  const auto a = thermal_fock(0.4, 6);
  const auto b = fock_number(2, 4);
  const auto ab = tensor_product(a, b);
  CHECK(ab.dims() == std::vector<int>{6, 4});
  CHECK((partial_trace(ab, {0}).matrix() - a.matrix() * b.trace()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((partial_trace(ab, {1}).matrix() - b.matrix() * a.trace()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(spectral_entropy(ab) - spectral_entropy(a)) < 1e-12);
  CHECK_THROWS_AS(partial_trace(ab, {0, 0}), DomainError);
  CHECK_THROWS_AS(partial_trace(ab, {2}), DomainError);
}

TEST_CASE("cutoff policy") {
  CHECK(select_cutoff(1.0) == 34);
  CHECK(select_cutoff(0.0) == 2);
  CHECK(thermal_tail(1.0, 34) < 1e-10);
  CHECK(thermal_tail(1.0, 33) >= 1e-10);
  CHECK_THROWS_AS(select_cutoff(100.0), CutoffRefusal);
  try {
    require_cutoff(10, 5.0);
    FAIL("expected refusal");
  } catch (const CutoffRefusal& r) {
    CHECK(r.required_cutoff() >= 76);
  }
  CHECK_NOTHROW(require_cutoff(80, 5.0));
}

TEST_CASE("channels on thermal inputs") {
  const double e = 1.3;
  const auto in = thermal_fock(e, 80);
  const double eta = 0.6;
  const auto att = apply_channel_fock(in, ChannelParam::attenuator(eta));
  CHECK(att.cutoff() == 80);
  CHECK(std::abs(spectral_entropy(att) - oracle::g(eta * e)) < 1e-6);
  for (double kappa : {1.2, 2.0}) {
    const auto amp = apply_channel_fock(in, ChannelParam::amplifier(kappa));
    CHECK(std::abs(spectral_entropy(amp) - oracle::g(kappa * e + kappa - 1.0)) < 1e-6);
    const auto comp = apply_channel_fock(in, ChannelParam::amplifier_complement(kappa));
    CHECK(std::abs(spectral_entropy(comp) - oracle::g((kappa - 1.0) * (e + 1.0))) < 1e-6);
    CHECK(std::abs(amp.trace() - in.trace()) < 1e-12);
  }
}

TEST_CASE("attenuator on a single photon") {
  const auto out = apply_channel_fock(fock_number(1, 4), ChannelParam::attenuator(0.7));
  CHECK(std::abs(out.matrix()(0, 0).real() - 0.3) < 1e-14);
  CHECK(std::abs(out.matrix()(1, 1).real() - 0.7) < 1e-14);
}

TEST_CASE("channel on one mode of a product state") {
  const auto a = thermal_fock(0.5, 6);
  const auto b = thermal_fock(0.8, 12);
  const auto ch = ChannelParam::amplifier(1.5);
  const auto joint = apply_channel_fock(tensor_product(a, b), ch, 1);
  const auto single = apply_channel_fock(b, ch, 0);
  REQUIRE(joint.cutoff(1) == single.cutoff());
  const auto expected = tensor_product(a, single);
  CHECK((joint.matrix() - expected.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(apply_channel_fock(b, ch, 1), DomainError);
}
