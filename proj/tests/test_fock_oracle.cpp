#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gaussq/errors.hpp"
#include "gaussq/fock_oracle.hpp"
#include "gaussq/gaussian_states.hpp"
#include "gaussq/parallel.hpp"
#include "gaussq/random_states.hpp"
#include "gaussq/spot_checks.hpp"
#include "oracles.hpp"

using namespace gaussq;

namespace {

int rule_cutoff(double kappa, double e) { return select_cutoff(extension_max_energy(kappa, e)); }

}  // namespace

TEST_CASE("oracle CMI closed cases") {
  const double kappa = 1.5;
  CHECK(std::abs(oracle_cmi(kappa, 0.0, 0.3, rule_cutoff(kappa, 0.0)) - 2.0 * oracle::g(kappa - 1.0)) < 1e-9);
  CHECK(std::abs(oracle_cmi(1.0, 1.0, 0.5, 30)) < 1e-12);
  CHECK(std::abs(oracle_cmi(1.0, 0.7, 0.2, rule_cutoff(1.0, 0.7))) < 1e-12);
}

TEST_CASE("oracle CMI matches the covariance route") {
  const auto fock = oracle_cmi_detailed(2.0, 1.0, 0.5, rule_cutoff(2.0, 1.0));
  const double gauss = gaussian_cmi(extension_family(2.0, 1.0, 0.5), {"A"}, {"B"}, {"R"});
  CHECK(std::abs(fock.value - gauss) < 1e-5);
  CHECK(fock.truncated_mass < 1e-9);
  CHECK(fock.cutoff == 81);
}

TEST_CASE("every extension marginal agrees across formalisms") {
  for (double kappa : {1.25, 2.5}) {
    for (double e : {0.5, 2.0}) {
      const int n = rule_cutoff(kappa, e);
      for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        CAPTURE(kappa);
        CAPTURE(e);
        CAPTURE(eta);
        const auto fock = oracle_cmi_detailed(kappa, e, eta, n);
        const auto state = extension_family(kappa, e, eta);
        CHECK(std::abs(fock.s_a - state.entropy({"A"})) < 1e-5);
        CHECK(std::abs(fock.s_b - state.entropy({"B"})) < 1e-5);
        CHECK(std::abs(fock.s_r - state.entropy({"R"})) < 1e-5);
        CHECK(std::abs(fock.s_ab - state.entropy({"A", "B"})) < 1e-5);
        CHECK(std::abs(fock.s_ar - state.entropy({"A", "R"})) < 1e-5);
        CHECK(std::abs(fock.s_br - state.entropy({"B", "R"})) < 1e-5);
        CHECK(std::abs(fock.s_abr - state.entropy({"A", "B", "R"})) < 1e-5);
      }
    }
  }
}

TEST_CASE("oracle CMI refuses a short cutoff") {
  try {
    oracle_cmi(2.0, 2.0, 0.5, 40);
    FAIL("expected refusal");
  } catch (const CutoffRefusal& r) {
    CHECK(r.required_cutoff() >= 76);
  }
  CutoffPolicy tight;
  tight.max_cutoff = 50;
  CHECK_THROWS_AS(oracle_cmi(1.5, 0.5, 0.5, 60, tight), CutoffRefusal);
  CHECK_THROWS_AS(oracle_cmi(0.5, 1.0, 0.5, 30), DomainError);
}

TEST_CASE("Gauss-Legendre rule") {
  const auto q = gauss_legendre(3, 0.0, 2.0);
  double integral = 0.0;
  for (int i = 0; i < 3; ++i) integral += q.weights[i] * std::pow(q.nodes[i], 5);
  CHECK(std::abs(integral - 64.0 / 6.0) < 1e-12);
  CHECK(std::abs(q.weights.sum() - 2.0) < 1e-14);
}

TEST_CASE("displaced thermal mixture reproduces the thermal state") {
  CHECK(verify_displaced_thermal_mixture(1.0, 1.0, 20) == 0.0);
  CHECK(verify_displaced_thermal_mixture(1.0, 0.0, 40) < 1e-6);
  CHECK(verify_displaced_thermal_mixture(2.0, 0.7, 30) < 1e-6);
  const auto mix = displaced_thermal_mixture(1.0, 0.0, 40);
  for (int n = 1; n < 40; ++n) CHECK(mix(n, n).real() < mix(n - 1, n - 1).real());
  PolarGrid small;
  small.radius = 2.0;
  CHECK_THROWS_AS(displaced_thermal_mixture(1.0, 0.0, 10, small), QuadratureRefusal);
  CHECK_THROWS_AS(displaced_thermal_mixture(1.0, 2.0, 10), DomainError);
}

TEST_CASE("coarse quadrature does not converge") {
  PolarGrid coarse;
  coarse.radial = 4;
  CHECK(verify_displaced_thermal_mixture(1.0, 0.0, 20, coarse) > 1e-6);
}

TEST_CASE("random Fock states") {
  auto rng = stream_for(5, 0);
  const auto u = haar_unitary(rng, 4);
  CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
  for (int i = 0; i < 20; ++i) {
    auto r = stream_for(9, i);
    const auto rho = random_fock_state(r, {5, 3});
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK_NOTHROW(spectral_entropy(rho));
  }
  auto a = stream_for(3, 7);
  auto b = stream_for(3, 7);
  auto c = stream_for(3, 8);
  const auto ra = random_fock_state(a, {6});
  CHECK(ra.matrix() == random_fock_state(b, {6}).matrix());
  CHECK(ra.matrix() != random_fock_state(c, {6}).matrix());
}

TEST_CASE("parallel_for is order independent") {
  std::vector<double> one(50), many(50);
  parallel_for(50, 1, [&](std::size_t i) { one[i] = std::sqrt(static_cast<double>(i)); });
  parallel_for(50, 4, [&](std::size_t i) { many[i] = std::sqrt(static_cast<double>(i)); });
  CHECK(one == many);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 6) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("output-entropy spot checks (seeded)") {
  const auto moe = moe_spot_check(21, 12, 12, {1.2, 2.0});
  CHECK(moe.checks == 48);
  CHECK(moe.refused == 0);
  CHECK(moe.worst_margin >= -1e-6);
  const auto epi = conditional_epi_spot_check(22, 4, 5, {1.2, 2.0}, 2);
  CHECK(epi.checks == 8);
  CHECK(epi.worst_margin >= -1e-6);
  const auto again = conditional_epi_spot_check(22, 4, 5, {1.2, 2.0}, 1);
  CHECK(again.worst_margin == epi.worst_margin);
}

TEST_CASE("output-entropy bounds are tight on thermal inputs") {
  const auto in = thermal_fock(0.7, 70);
  const Nats s = spectral_entropy(in);
  for (double kappa : {1.2, 2.0}) {
    const Nats amp = spectral_entropy(apply_channel_fock(in, ChannelParam::amplifier(kappa)));
    CHECK(std::abs(amp - amplifier_min_output_entropy(kappa, s)) < 1e-6);
    const Nats comp = spectral_entropy(apply_channel_fock(in, ChannelParam::amplifier_complement(kappa)));
    CHECK(std::abs(comp - amplifier_complement_min_output_entropy(kappa, s)) < 1e-6);
  }
}
