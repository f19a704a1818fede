#include "gaussq/entropics.hpp"

#include <cmath>
#include <limits>

#include "gaussq/errors.hpp"
#include "gaussq/params.hpp"

namespace gaussq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(e^a + e^b) without overflow; either argument may be -inf.
double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

double log_or_neg_inf(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

// Thermal entropy in extended precision: the double result is then rounded
// once, and the inverse can resolve roots below the double rounding of s.
long double wide_entropy(long double e) {
  if (e == 0.0L) return 0.0L;
  // E ln E is below the smallest normal double here.
  if (e < 1e-300L) return (e + 1.0L) * std::log1p(e);
  // (E+1)ln(E+1) - E ln E == ln(1+E) + E ln(1 + 1/E), free of cancellation
  // at both ends.
  return std::log1p(e) + e * std::log1p(1.0L / e);
}

// Largest entropy whose inverse is representable.
const double kMaxEntropy = thermal_entropy(std::numeric_limits<double>::max());

}  // namespace

Nats thermal_entropy(double energy) {
  require_energy(energy);
  return static_cast<double>(wide_entropy(energy));
}

double thermal_entropy_derivative(double energy) {
  require_energy(energy);
  if (energy == 0.0) return std::numeric_limits<double>::infinity();
  return std::log1p(1.0 / energy);
}

Nats thermal_energy_for_entropy(Nats s) {
  require_energy(s, "entropy");
  if (s == 0.0) return 0.0;
  if (s > kMaxEntropy) throw DomainError("entropy too large for a finite thermal energy");

  // ln(1+E) <= g(E) <= ln(1+E) + 1 brackets the root.
  double lo = s > 1.0 ? std::expm1(s - 1.0) : 0.0;
  double hi = s < 709.0 ? std::expm1(s) : std::numeric_limits<double>::max();
  const long double target = s;
  const auto residual = [target](double x) { return wide_entropy(x) - target; };
  double x = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const long double r = residual(x);
    if (r == 0.0L) return x;
    if (r > 0.0L) hi = x; else lo = x;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;
    double next = static_cast<double>(x - r / std::log1p(1.0L / x));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  // Return whichever candidate leaves the smallest residual.
  double best = x;
  for (double candidate : {lo, hi}) {
    if (std::abs(residual(candidate)) < std::abs(residual(best))) best = candidate;
  }
  return best;
}

Nats extension_term(double kappa, double energy, double eta) {
  require_gain(kappa);
  require_energy(energy);
  require_transmissivity(eta);
  const double kept = (kappa - eta) * energy + (kappa - 1.0);
  return thermal_entropy(kept) - thermal_entropy((1.0 - eta) * energy);
}

double extension_term_second_derivative(double kappa, double energy, double eta) {
  require_gain(kappa);
  require_energy(energy);
  require_transmissivity(eta);
  if (eta == 1.0) throw SingularPointError("second derivative of the extension term is singular at eta = 1");
  const double e = energy;
  const double numerator = e * (e + 1.0) * (kappa - 1.0) * ((kappa + 1.0 - 2.0 * eta) * e + kappa);
  if (numerator == 0.0) return 0.0;
  const double denominator = (1.0 - eta) * ((kappa - eta) * e + kappa - 1.0) *
                             ((kappa - eta) * e + kappa) * ((1.0 - eta) * e + 1.0);
  return numerator / denominator;
}

Nats tms_bound_gap(double kappa, double energy) {
  require_gain(kappa);
  require_energy(energy);
  const double upper = thermal_entropy((kappa - 0.5) * energy + kappa - 1.0) - thermal_entropy(0.5 * energy);
  return upper - std::log1p(2.0 * (kappa - 1.0));
}

Nats classical_extension_cmi(double kappa, double x) {
  require_gain(kappa);
  require_energy(x, "x");
  return thermal_entropy(kappa * x + kappa - 1.0) + thermal_entropy((kappa - 1.0) * (x + 1.0)) -
         thermal_entropy(x);
}

Nats amplifier_min_output_entropy(double kappa, Nats s) {
  require_gain(kappa);
  const double energy = thermal_energy_for_entropy(s);
  return thermal_entropy(kappa * energy + kappa - 1.0);
}

Nats amplifier_complement_min_output_entropy(double kappa, Nats s) {
  require_gain(kappa);
  const double energy = thermal_energy_for_entropy(s);
  return thermal_entropy((kappa - 1.0) * (energy + 1.0));
}

ConditionalEpiBounds conditional_epi_bounds(double kappa, Nats s) {
  require_gain(kappa);
  require_finite(s, "conditional entropy");
  const double log_kappa = std::log(kappa);
  const double log_kappa_minus_one = log_or_neg_inf(kappa - 1.0);
  return {log_add_exp(log_kappa + s, log_kappa_minus_one),
          log_add_exp(log_kappa_minus_one + s, log_kappa)};
}

Nats conditional_epi_cmi_bound(double kappa, Nats s) {
  require_gain(kappa);
  require_finite(s, "conditional entropy");
  const double cross = kappa * (kappa - 1.0);
  const double diagonal = kappa * kappa + (kappa - 1.0) * (kappa - 1.0);
  const double a = std::abs(s);
  if (a < 20.0) return std::log(2.0 * cross * std::cosh(s) + diagonal);
  // 2 cosh s = e^|s| (1 + e^-2|s|); factor e^|s| out of the logarithm.
  const double decay = std::exp(-a);
  return a + std::log(cross * (1.0 + decay * decay) + diagonal * decay);
}

}  // namespace gaussq
