#pragma once

#include <cstdint>
#include <vector>

#include "gaussq/entropics.hpp"

namespace gaussq {

/// Outcome of a seeded family of output-entropy checks. `worst_margin` is the
/// smallest (value - bound) seen; a check fails when it is below -tolerance.
struct SpotCheckResult {
  int checks = 0;
  double worst_margin = 0.0;
  int worst_index = -1;
  int refused = 0;
};

/// Minimum-output-entropy checks on random one-mode states at `cutoff`:
/// S(A_kappa(rho)) >= amplifier_min_output_entropy(kappa, S(rho)) and the same
/// for the complement. Each state is checked for every kappa; both channels
/// count towards `checks`.
SpotCheckResult moe_spot_check(std::uint64_t seed, int states, int cutoff, const std::vector<double>& kappas,
                               int jobs = 1);

/// Conditional EPI checks on random two-mode states omega_AR (cutoff per
/// mode): after the squeezer on A with a vacuum B, S(A|R) and S(B|R) against
/// the conditional_epi_bounds of S(A|R) of the input. Gains cycle through
/// `kappas` by state index.
SpotCheckResult conditional_epi_spot_check(std::uint64_t seed, int states, int cutoff,
                                           const std::vector<double>& kappas, int jobs = 1);

}  // namespace gaussq
