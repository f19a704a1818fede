#include "gaussq/spot_checks.hpp"

#include <limits>

#include "gaussq/errors.hpp"
#include "gaussq/fock.hpp"
#include "gaussq/parallel.hpp"
#include "gaussq/random_states.hpp"

namespace gaussq {

namespace {

SpotCheckResult combine(const std::vector<double>& margins, const std::vector<int>& refused) {
  SpotCheckResult out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (refused[i]) {
      ++out.refused;
      continue;
    }
    ++out.checks;
    if (margins[i] < out.worst_margin) {
      out.worst_margin = margins[i];
      out.worst_index = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace

SpotCheckResult moe_spot_check(std::uint64_t seed, int states, int cutoff, const std::vector<double>& kappas,
                               int jobs) {
  if (states < 0 || kappas.empty()) throw DomainError("spot check needs a state count and gains");
  const std::size_t per_state = 2 * kappas.size();
  std::vector<double> margins(static_cast<std::size_t>(states) * per_state, 0.0);
  std::vector<int> refused(margins.size(), 0);
  parallel_for(static_cast<std::size_t>(states), jobs, [&](std::size_t i) {
    auto rng = stream_for(seed, i);
    const TruncatedState rho = random_fock_state(rng, {cutoff});
    const Nats s = spectral_entropy(rho);
    for (std::size_t k = 0; k < kappas.size(); ++k) {
      const double kappa = kappas[k];
      const std::size_t slot = i * per_state + 2 * k;
      try {
        const Nats amp = spectral_entropy(apply_channel_fock(rho, ChannelParam::amplifier(kappa)));
        margins[slot] = amp - amplifier_min_output_entropy(kappa, s);
        const Nats comp = spectral_entropy(apply_channel_fock(rho, ChannelParam::amplifier_complement(kappa)));
        margins[slot + 1] = comp - amplifier_complement_min_output_entropy(kappa, s);
      } catch (const CutoffRefusal&) {
        refused[slot] = refused[slot + 1] = 1;
      }
    }
  });
  return combine(margins, refused);
}

SpotCheckResult conditional_epi_spot_check(std::uint64_t seed, int states, int cutoff,
                                           const std::vector<double>& kappas, int jobs) {
  if (states < 0 || kappas.empty()) throw DomainError("spot check needs a state count and gains");
  std::vector<double> margins(static_cast<std::size_t>(states) * 2, 0.0);
  std::vector<int> refused(margins.size(), 0);
  parallel_for(static_cast<std::size_t>(states), jobs, [&](std::size_t i) {
    auto rng = stream_for(seed, i);
    const double kappa = kappas[i % kappas.size()];
    const TruncatedState ar = random_fock_state(rng, {cutoff, cutoff});
    const Nats s_r = spectral_entropy(partial_trace(ar, {1}));
    const Nats s_given = spectral_entropy(ar) - s_r;
    const ConditionalEpiBounds bound = conditional_epi_bounds(kappa, s_given);
    try {
      const Nats a_out = spectral_entropy(apply_channel_fock(ar, ChannelParam::amplifier(kappa), 0));
      const Nats b_out = spectral_entropy(apply_channel_fock(ar, ChannelParam::amplifier_complement(kappa), 0));
      margins[2 * i] = (a_out - s_r) - bound.a_given_r;
      margins[2 * i + 1] = (b_out - s_r) - bound.b_given_r;
    } catch (const CutoffRefusal&) {
      refused[2 * i] = refused[2 * i + 1] = 1;
    }
  });
  return combine(margins, refused);
}

}  // namespace gaussq
