#pragma once

#include <Eigen/Dense>
#include <optional>

#include "gaussq/entropics.hpp"
#include "gaussq/fock.hpp"

namespace gaussq {

/// Largest per-mode energy in the extension-family construction: the
/// squeezed A mode carries kappa (E + 1) - 1, the reference at most E.
double extension_max_energy(double kappa, double energy);

struct OracleCmi {
  Nats value = 0.0;
  int cutoff = 0;
  /// Norm lost to truncation before renormalising the pure state.
  double truncated_mass = 0.0;
  /// Marginal entropies of the extension state.
  Nats s_a = 0.0, s_b = 0.0, s_r = 0.0, s_ab = 0.0, s_ar = 0.0, s_br = 0.0, s_abr = 0.0;
};

/// I(A;B|R) of the extension family computed in Fock space. The state is
/// built as a pure state on A, B, R and the attenuator environment F:
/// two-mode squeezed vacuum on A R, beam splitter on R F, squeezer on A B.
/// All four modes share the cutoff. The construction conserves
/// n_A - n_B - n_R - n_F, so every reduced state is block diagonal in its
/// share of that charge and is diagonalised block by block (no N^6 dense
/// matrix); three-mode marginals use the complementary single mode.
/// Throws CutoffRefusal if `cutoff` leaves a thermal tail above
/// policy.refusal_tail at extension_max_energy, or exceeds policy.max_cutoff.
OracleCmi oracle_cmi_detailed(double kappa, double energy, double eta, int cutoff, const CutoffPolicy& policy = {});
Nats oracle_cmi(double kappa, double energy, double eta, int cutoff, const CutoffPolicy& policy = {});

/// Polar grid for the displaced-thermal mixture: Gauss-Legendre in the
/// radius, uniform in the angle.
struct PolarGrid {
  int radial = 64;
  int angular = 64;
  /// Outer radius; defaults to the radius holding 1 - 1e-10 of the weight.
  std::optional<double> radius;
};

/// Gauss-Legendre nodes and weights on [lo, hi] (Golub-Welsch).
struct Quadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
Quadrature gauss_legendre(int points, double lo, double hi);

/// Radius holding 1 - 1e-10 of a complex Gaussian of variance `spread`.
double mixture_radius(double spread);

/// Top-left N x N block of the integral of D(alpha) w(E') D(alpha)^dag
/// against the complex Gaussian of variance E - E'. Throws
/// QuadratureRefusal if the grid radius is below mixture_radius.
Eigen::MatrixXcd displaced_thermal_mixture(double energy, double inner_energy, int cutoff, const PolarGrid& grid = {});

/// Max-entry deviation of that mixture from thermal_fock(E, N).
double verify_displaced_thermal_mixture(double energy, double inner_energy, int cutoff, const PolarGrid& grid = {});

}  // namespace gaussq
