#include <cmath>

#include "doctest.h"
#include "gaussq/errors.hpp"
#include "gaussq/gaussian_states.hpp"
#include "oracles.hpp"

using namespace gaussq;
using Eigen::MatrixXd;

namespace {

double max_abs_diff(const MatrixXd& a, const MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

double cmi(const GaussianState& s) { return gaussian_cmi(s, {"A"}, {"B"}, {"R"}); }

}  // namespace

TEST_CASE("thermal state") {
  CHECK(max_abs_diff(thermal_state(0.0).covariance().matrix(), 0.5 * MatrixXd::Identity(2, 2)) == 0.0);
  for (double e : {0.0, 0.7, 4.0}) {
    const auto st = thermal_state(e);
    CHECK(st.entropy({"A"}) == doctest::Approx(oracle::g(e)).epsilon(1e-13));
    const MatrixXd& m = st.covariance().matrix();
    CHECK(0.5 * (m(0, 0) + m(1, 1)) - 0.5 == doctest::Approx(e));
    CHECK(st.mean().isZero());
  }
  CHECK_THROWS_AS(thermal_state(-1.0), DomainError);
}

TEST_CASE("labels") {
  const auto st = extension_family(2.0, 1.0, 0.3);
  CHECK(st.index_of("R") == 2);
  CHECK_THROWS_AS(st.index_of("Z"), DomainError);
  CHECK_THROWS_AS(GaussianState(CovarianceMatrix::vacuum(2), {"A", "A"}), DomainError);
  CHECK_THROWS_AS(GaussianState(CovarianceMatrix::vacuum(2), {"A"}), DomainError);
  CHECK_THROWS_AS(gaussian_cmi(st, {"A"}, {"A"}, {"R"}), DomainError);
  CHECK(st.marginal({"R", "A"}).labels() == std::vector<std::string>{"R", "A"});
}

TEST_CASE("squeezed thermal state") {
  const auto id = tms_thermal_state(1.0, 2.0);
  MatrixXd expected = MatrixXd::Zero(4, 4);
  expected.topLeftCorner(2, 2) = 2.5 * MatrixXd::Identity(2, 2);
  expected.bottomRightCorner(2, 2) = 0.5 * MatrixXd::Identity(2, 2);
  CHECK(max_abs_diff(id.covariance().matrix(), expected) == 0.0);

  const auto tmsv = tms_thermal_state(2.5, 0.0);
  for (double nu : symplectic_eigenvalues(tmsv.covariance())) CHECK(nu == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_abs_diff(tmsv.covariance().matrix(), oracle::tmsv(1.5)) <= 1e-14);

  for (double kappa : {1.0, 1.3, 2.0, 5.0}) {
    for (double e : {0.0, 0.5, 3.0}) {
      const auto st = tms_thermal_state(kappa, e);
      CHECK(st.entropy({"A"}) == doctest::Approx(oracle::g(kappa * (e + 1.0) - 1.0)).epsilon(1e-12));
      CHECK(st.entropy({"B"}) == doctest::Approx(oracle::g((kappa - 1.0) * (e + 1.0))).epsilon(1e-12).scale(1.0));
      CHECK(st.entropy({"A", "B"}) == doctest::Approx(oracle::g(e)).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("channel output states") {
  const double e = 1.7;
  CHECK(max_abs_diff(gamma_attenuated(1.0, e).covariance().matrix(), oracle::tmsv(e)) <= 1e-14);
  MatrixXd product = MatrixXd::Zero(4, 4);
  product.topLeftCorner(2, 2) = (e + 0.5) * MatrixXd::Identity(2, 2);
  product.bottomRightCorner(2, 2) = 0.5 * MatrixXd::Identity(2, 2);
  CHECK(max_abs_diff(gamma_attenuated(0.0, e).covariance().matrix(), product) == 0.0);
  for (double kappa : {1.0, 1.5, 3.0}) {
    CHECK(max_abs_diff(gamma_amplified(kappa, 0.0).covariance().matrix(),
                       tms_thermal_state(1.0, kappa - 1.0).covariance().matrix()) <= 1e-13);
  }
  // Compositional route: beam splitter on half a squeezed vacuum.
  for (double eta : {0.0, 0.25, 0.6, 1.0}) {
    CHECK(max_abs_diff(gamma_attenuated(eta, e).covariance().matrix(), oracle::attenuate_second(oracle::tmsv(e), eta)) <=
          1e-13);
  }
}

TEST_CASE("attenuated purification matches its compositional construction") {
  oracle::Sampler rng(31);
  for (int i = 0; i < 200; ++i) {
    const double e = rng.uniform(0.0, 10.0), eta = rng.uniform(0.0, 1.0);
    const auto ar = attenuated_tmsv(e, eta);
    CHECK(max_abs_diff(ar.covariance().matrix(), oracle::attenuate_second(oracle::tmsv(e), eta)) <= 1e-12 * (e + 1.0));
    const auto nu = symplectic_eigenvalues(ar.covariance());
    CHECK(nu[0] == doctest::Approx((1.0 - eta) * e + 0.5).epsilon(1e-11));
    CHECK(nu[1] == doctest::Approx(0.5).epsilon(1e-11));
  }
}

TEST_CASE("extension family") {
  for (double kappa : {1.0, 1.5, 2.0, 4.0}) {
    for (double e : {0.0, 0.5, 1.0, 6.0}) {
      for (double eta : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        const auto st = extension_family(kappa, e, eta);
        CHECK(max_abs_diff(st.marginal({"A", "B"}).covariance().matrix(),
                           tms_thermal_state(kappa, e).covariance().matrix()) <= 1e-12 * std::max(1.0, kappa * (e + 1.0)));
        CHECK(st.entropy({"R"}) == doctest::Approx(oracle::g(eta * e)).epsilon(1e-12).scale(1.0));
        CHECK(st.entropy({"A", "R"}) ==
              doctest::Approx(oracle::g(kappa * (e + 1.0) - eta * e - 1.0)).epsilon(1e-11).scale(1.0));
        const double expected = oracle::psi(kappa, e, eta) + oracle::psi(kappa, e, 1.0 - eta);
        CHECK(cmi(st) == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
      }
    }
  }
  // Fully transmitted: R purifies A, and the three-mode state is pure.
  const auto pure = extension_family(2.0, 1.5, 1.0);
  CHECK(pure.entropy({"A", "B", "R"}) == 0.0);
  CHECK(pure.entropy({"A", "B"}) == doctest::Approx(oracle::g(1.5)).epsilon(1e-12));
}

TEST_CASE("extension family is optimised at half transmission") {
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      const double kappa = 1.0 + 9.0 * i / 11.0, e = 10.0 * j / 11.0;
      const double mid = cmi(extension_family(kappa, e, 0.5));
      CHECK(0.5 * mid == doctest::Approx(oracle::g((kappa - 0.5) * e + kappa - 1.0) - oracle::g(0.5 * e)).epsilon(1e-10).scale(1.0));
      for (double eta : {0.0, 0.1, 0.3, 0.45}) {
        const double lo = cmi(extension_family(kappa, e, eta));
        const double hi = cmi(extension_family(kappa, e, 1.0 - eta));
        CHECK(std::abs(lo - hi) <= 1e-12);
        CHECK(lo - mid >= -1e-10);
      }
      // Conditional entropy S(A|R) vanishes at eta = 1/2.
      CHECK(std::abs(conditional_entropy(attenuated_tmsv(e, 0.5), {"A"}, {"R"})) <= 1e-10);
    }
  }
}

TEST_CASE("conditional EPI chain on the extension family") {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (double eta : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        const double kappa = 1.0 + 9.0 * i / 9.0, e = 10.0 * j / 9.0;
        const auto st = extension_family(kappa, e, eta);
        const double s = conditional_entropy(attenuated_tmsv(e, eta), {"A"}, {"R"});
        CHECK(cmi(st) >= conditional_epi_cmi_bound(kappa, s) - 1e-9);
        CHECK(conditional_epi_cmi_bound(kappa, s) >= 2.0 * std::log(2.0 * kappa - 1.0) - 1e-9);
      }
    }
  }
}

TEST_CASE("cmi of product and trivial extensions") {
  const auto product = GaussianState(direct_sum(CovarianceMatrix::thermal(1.0), CovarianceMatrix::thermal(2.0)), {"A", "B"});
  CHECK(std::abs(gaussian_cmi(product, {"A"}, {"B"}, {})) <= 1e-13);
  for (double kappa : {1.0, 1.5, 3.0}) {
    CHECK(std::abs(cmi(extension_family(kappa, 0.0, 0.3)) - 2.0 * oracle::g(kappa - 1.0)) <= 1e-11);
  }
}
