#include "gaussq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "gaussq/bounds.hpp"
#include "gaussq/entropics.hpp"
#include "gaussq/errors.hpp"
#include "gaussq/fock.hpp"
#include "gaussq/fock_oracle.hpp"
#include "gaussq/gaussian_states.hpp"
#include "gaussq/parallel.hpp"
#include "gaussq/random_states.hpp"
#include "gaussq/symplectic.hpp"

namespace gaussq {

namespace {

// ln(e/2)
const double kGapLimit = 1.0 - std::numbers::ln2;
constexpr int kRandomPoints = 1000;

double lerp(double lo, double hi, int i, int steps) { return lo + (hi - lo) * i / (steps - 1); }

// Violations of one parameter point; empty when the point was refused.
struct PointResult {
  std::vector<double> violations;
  std::string refusal;
};

using Point = std::vector<double>;

VerifyReport collect(std::string_view suite, double tolerance, std::uint64_t seed, const std::vector<Point>& points,
                     int jobs, const std::function<PointResult(const Point&)>& check) {
  std::vector<PointResult> results(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    try {
      results[i] = check(points[i]);
    } catch (const Refusal& r) {
      results[i].refusal = std::string(r.what()) + " (" + r.hint() + ")";
    }
  });
  VerifyReport report;
  report.suite = std::string(suite);
  report.tolerance = tolerance;
  report.seed = seed;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (!r.refusal.empty()) {
      ++report.skipped;
      report.hints.push_back(r.refusal);
      continue;
    }
    for (double v : r.violations) {
      ++report.checks_run;
      // NaN counts as an unbounded violation.
      report.max_violation = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(report.max_violation, v);
    }
  }
  report.passed = report.checks_run > 0 && report.max_violation <= tolerance;
  return report;
}

// Grid over the box plus seeded uniform points in it.
std::vector<Point> grid_and_random(const std::vector<std::pair<double, double>>& box, int steps, std::uint64_t seed,
                                   int random_points) {
  std::vector<Point> points{{}};
  for (const auto& [lo, hi] : box) {
    std::vector<Point> next;
    for (const auto& p : points) {
      for (int i = 0; i < steps; ++i) {
        Point q = p;
        q.push_back(lerp(lo, hi, i, steps));
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  auto rng = stream_for(seed, 0);
  for (int k = 0; k < random_points; ++k) {
    Point q;
    for (const auto& [lo, hi] : box) q.push_back(std::uniform_real_distribution<double>(lo, hi)(rng));
    points.push_back(std::move(q));
  }
  return points;
}

double max_entry_difference(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Nats extension_cmi(double kappa, double energy, double eta) {
  return gaussian_cmi(extension_family(kappa, energy, eta), {"A"}, {"B"}, {"R"});
}

VerifyReport gap_suite(double tol, std::uint64_t seed, int jobs) {
  const auto points = grid_and_random({{1.0, 10.0}, {0.0, 100.0}}, 200, seed, kRandomPoints);
  return collect("gap", tol, seed, points, jobs, [](const Point& p) {
    return PointResult{{tms_bound_gap(p[0], p[1]) - kGapLimit}, {}};
  });
}

VerifyReport convexity_suite(double tol, std::uint64_t seed, int jobs) {
  const auto points = grid_and_random({{1.0, 10.0}, {0.0, 10.0}, {0.0, 0.999}}, 30, seed, kRandomPoints);
  return collect("convexity", tol, seed, points, jobs, [](const Point& p) {
    return PointResult{{-extension_term_second_derivative(p[0], p[1], p[2])}, {}};
  });
}

VerifyReport jensen_suite(double tol, std::uint64_t seed, int jobs) {
  const auto points = grid_and_random({{1.0, 10.0}, {0.0, 10.0}, {0.0, 1.0}}, 21, seed, kRandomPoints);
  return collect("jensen", tol, seed, points, jobs, [](const Point& p) {
    return PointResult{{extension_cmi(p[0], p[1], 0.5) - extension_cmi(p[0], p[1], p[2])}, {}};
  });
}

VerifyReport corollary_map_suite(double tol, std::uint64_t seed, int jobs) {
  std::vector<Point> points;
  auto rng = stream_for(seed, 0);
  for (int k = 0; k < kRandomPoints; ++k) {
    points.push_back({std::uniform_real_distribution<double>(0.0, 1.0)(rng),
                      std::uniform_real_distribution<double>(1.0, 10.0)(rng),
                      std::uniform_real_distribution<double>(0.0, 10.0)(rng)});
  }
  return collect("corollary-map", tol, seed, points, jobs, [](const Point& p) {
    const double eta = p[0], kappa = p[1], e = p[2];
    const auto att = tms_equivalent_params(ChannelParam::attenuator(eta), e);
    const auto amp = tms_equivalent_params(ChannelParam::amplifier(kappa), e);
    return PointResult{{max_entry_difference(gamma_attenuated(eta, e).covariance(),
                                             tms_thermal_state(att.kappa, att.energy).covariance()),
                        max_entry_difference(gamma_amplified(kappa, e).covariance(),
                                             tms_thermal_state(amp.kappa, amp.energy).covariance())},
                       {}};
  });
}

VerifyReport separation_suite(double tol, std::uint64_t seed, int jobs) {
  // Strictly inside kappa > 1, E > 0, where the separation is claimed.
  const auto points = grid_and_random({{1.05, 10.0}, {0.05, 50.0}}, 12, seed, 100);
  return collect("separation", tol, seed, points, jobs, [](const Point& p) {
    return PointResult{{-separation_check(p[0], p[1])}, {}};
  });
}

VerifyReport epi_chain_suite(double tol, std::uint64_t seed, int jobs) {
  const auto points = grid_and_random({{1.0, 10.0}, {0.0, 10.0}, {0.0, 1.0}}, 15, seed, kRandomPoints);
  return collect("epi-chain", tol, seed, points, jobs, [](const Point& p) {
    const double kappa = p[0];
    const auto state = extension_family(kappa, p[1], p[2]);
    const Nats cmi = gaussian_cmi(state, {"A"}, {"B"}, {"R"});
    // S(A|R) of the input, before the squeezer acts on A.
    const Nats s = conditional_entropy(attenuated_tmsv(p[1], p[2]), {"A"}, {"R"});
    const Nats chain = conditional_epi_cmi_bound(kappa, s);
    return PointResult{{chain - cmi, std::log(2.0 * kappa - 1.0) * 2.0 - chain}, {}};
  });
}

VerifyReport oracle_suite(double tol, std::uint64_t seed, int jobs) {
  // (kind, kappa, E, eta): kind 0 is the three-mode CMI, 1..3 the channel
  // entropies on thermal inputs (attenuator, amplifier, complement).
  std::vector<Point> points;
  for (double kappa : {1.5, 2.0}) {
    for (double e : {0.5, 1.0, 2.0}) {
      for (double eta : {0.0, 0.5, 1.0}) points.push_back({0.0, kappa, e, eta});
      points.push_back({1.0, kappa, e, kappa - 1.0});
      points.push_back({2.0, kappa, e, 0.0});
      points.push_back({3.0, kappa, e, 0.0});
    }
  }
  auto rng = stream_for(seed, 0);
  for (int k = 0; k < 4; ++k) {
    points.push_back({0.0, std::uniform_real_distribution<double>(1.0, 2.0)(rng),
                      std::uniform_real_distribution<double>(0.0, 2.0)(rng),
                      std::uniform_real_distribution<double>(0.0, 1.0)(rng)});
  }
  return collect("oracle", tol, seed, points, jobs, [](const Point& p) {
    const int kind = static_cast<int>(p[0]);
    const double kappa = p[1], e = p[2], eta = p[3];
    if (kind == 0) {
      const int n = select_cutoff(extension_max_energy(kappa, e));
      return PointResult{{std::abs(oracle_cmi(kappa, e, eta, n) - extension_cmi(kappa, e, eta))}, {}};
    }
    const ChannelParam channel = kind == 1   ? ChannelParam::attenuator(eta)
                                 : kind == 2 ? ChannelParam::amplifier(kappa)
                                             : ChannelParam::amplifier_complement(kappa);
    const auto in = thermal_fock(e, select_cutoff(e));
    const Nats fock = spectral_entropy(apply_channel_fock(in, channel));
    const auto sigma = CovarianceMatrix::thermal(e);
    const CovarianceMatrix out = kind == 1   ? attenuator_cov(sigma, eta)
                                 : kind == 2 ? amplifier_cov(sigma, kappa)
                                             : amplifier_complement_cov(sigma, kappa);
    return PointResult{{std::abs(fock - gaussian_entropy(out))}, {}};
  });
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"gap",        "convexity", "jensen", "corollary-map",
                                              "separation", "epi-chain", "oracle"};
  return names;
}

double default_tolerance(std::string_view suite) {
  if (suite == "gap" || suite == "convexity" || suite == "corollary-map") return 1e-12;
  if (suite == "jensen") return 1e-10;
  if (suite == "epi-chain") return 1e-9;
  if (suite == "separation") return 0.0;
  if (suite == "oracle") return 1e-5;
  throw DomainError("unknown verify suite '" + std::string(suite) + "'");
}

VerifyReport run_verify(std::string_view suite, std::optional<double> tolerance, std::uint64_t seed, int jobs) {
  const double tol = tolerance.value_or(default_tolerance(suite));
  if (!std::isfinite(tol) || tol < 0.0) throw DomainError("tolerance must be finite and non-negative");
  if (suite == "gap") return gap_suite(tol, seed, jobs);
  if (suite == "convexity") return convexity_suite(tol, seed, jobs);
  if (suite == "jensen") return jensen_suite(tol, seed, jobs);
  if (suite == "corollary-map") return corollary_map_suite(tol, seed, jobs);
  if (suite == "separation") return separation_suite(tol, seed, jobs);
  if (suite == "epi-chain") return epi_chain_suite(tol, seed, jobs);
  return oracle_suite(tol, seed, jobs);
}

}  // namespace gaussq
