#pragma once

// Closed-form scalar entropies for thermal Gaussian states and the bounds
// built from them. Every entropy is in nats.

namespace gaussq {

using Nats = double;

/// Absolute tolerance (in energy units) of thermal_energy_for_entropy for
/// energies up to ~1e3; above that the tolerance is a few ulps of the root.
inline constexpr double kRootTolerance = 1e-12;

/// Entropy of the thermal state with mean photon number `energy`:
/// (E+1) ln(E+1) - E ln E. Zero at E = 0, strictly increasing and concave.
Nats thermal_entropy(double energy);

/// d/dE of thermal_entropy, ln(1 + 1/E); +infinity at E = 0.
double thermal_entropy_derivative(double energy);

/// Inverse of thermal_entropy: the unique E >= 0 with thermal_entropy(E) == s.
Nats thermal_energy_for_entropy(Nats s);

/// S(AR) - S(ABR) contribution of the Gaussian extension with attenuation
/// eta: g(kappa E + kappa - eta E - 1) - g((1 - eta) E). The extension's CMI
/// is extension_term(eta) + extension_term(1 - eta).
Nats extension_term(double kappa, double energy, double eta);

/// Closed-form second derivative of extension_term in eta. Non-negative.
/// Throws SingularPointError at eta == 1, where the formula has a pole.
double extension_term_second_derivative(double kappa, double energy, double eta);

/// Gap between the Gaussian-extension upper bound and the conditional-EPI
/// lower bound on the squashed entanglement of the squeezed thermal state.
/// Lies in [0, ln(e/2)].
Nats tms_bound_gap(double kappa, double energy);

/// CMI of the classical extension whose conditional input states are thermal
/// with energy x: g(kappa x + kappa - 1) + g((kappa-1)(x+1)) - g(x).
Nats classical_extension_cmi(double kappa, double x);

/// Minimum output entropy of the quantum-limited amplifier over inputs of
/// entropy s, attained by the thermal input.
Nats amplifier_min_output_entropy(double kappa, Nats s);

/// Same for the amplifier's complementary channel.
Nats amplifier_complement_min_output_entropy(double kappa, Nats s);

/// Lower bounds on S(A|R) and S(B|R) after two-mode squeezing a state whose
/// conditional entropy S(A|R) equals s (conditional entropy power
/// inequality). `s` may be negative.
struct ConditionalEpiBounds {
  Nats a_given_r;
  Nats b_given_r;
};
ConditionalEpiBounds conditional_epi_bounds(double kappa, Nats s);

/// ln(2 kappa (kappa-1) cosh s + kappa^2 + (kappa-1)^2): the conditional-EPI
/// lower bound on I(A;B|R) for squeezed extensions with S(A|R) = s.
/// Minimised at s = 0 with value 2 ln(2 kappa - 1).
Nats conditional_epi_cmi_bound(double kappa, Nats s);

}  // namespace gaussq
