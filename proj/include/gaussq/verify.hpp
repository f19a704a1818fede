#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gaussq {

/// Outcome of one verification suite. A check's violation is how far it is
/// on the wrong side of its claim; passed iff max_violation <= tolerance.
struct VerifyReport {
  std::string suite;
  long checks_run = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  /// Checks refused for cutoff reasons, with the refusal hints.
  int skipped = 0;
  std::vector<std::string> hints;
};

/// gap, convexity, jensen, corollary-map, separation, epi-chain, oracle.
const std::vector<std::string>& verify_suites();

/// Default tolerance of a suite.
double default_tolerance(std::string_view suite);

/// Runs a suite: a fixed grid plus seeded random points. Throws DomainError
/// for an unknown suite name.
VerifyReport run_verify(std::string_view suite, std::optional<double> tolerance, std::uint64_t seed, int jobs = 1);

}  // namespace gaussq
