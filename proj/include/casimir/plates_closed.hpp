#pragma once

// Exact closed pipeline for the parallel-plate stress tensor. The mode sum over
// n*pi/a is done in closed form as F(sigma_bar, Sigma) and the Lorentz-covariant
// sigma-derivatives are applied analytically through the radial chain rule.

#include "casimir/minkowski.hpp"
#include "casimir/stress_tensor.hpp"

namespace casimir {

/// Plate separation a > 0 (same length unit as the cutoffs).
struct PlateGeometry {
  double a = 1.0;
};

PlateGeometry plate_geometry(double a);

/// A scalar function of sigma_bar and its first two sigma_bar-derivatives.
struct RadialDerivatives {
  double f = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

/// Minimum of (sigma_bar - Sigma) * pi / a accepted before throwing NearPole.
inline constexpr double kPoleGuard = 1e-8;

/// (2+1) on-shell kernel at imaginary argument: exp(-sigma_bar m) / (2 pi sigma_bar).
double delta_m(double m, double sigma_bar);

/// Summed generating function F = 1 / (2 pi a sigma_bar (1 - exp((Sigma - sigma_bar) pi / a))).
double f_exact(PlateGeometry geom, const CutoffConfig& cfg);

/// Partial mode sum (1/a) sum_{n=0}^{N} exp(Sigma n pi / a) delta_m(n pi / a, sigma_bar).
double f_truncated(PlateGeometry geom, const CutoffConfig& cfg, long N);

/// a -> infinity limit of F: 1 / (2 pi^2 sigma_bar (sigma_bar - Sigma)).
double f_infinity(const CutoffConfig& cfg);

/// F as a function of (sigma_bar, Sigma) without a CutoffConfig; used by
/// finite-difference checks that perturb sigma componentwise.
double f_exact_raw(double a, double sigma_bar, double Sigma);

RadialDerivatives f_exact_radial(PlateGeometry geom, const CutoffConfig& cfg);
RadialDerivatives f_infinity_radial(const CutoffConfig& cfg);
/// Derivatives of F - F_inf, computed without cancellation between the two.
RadialDerivatives f_subtracted_radial(PlateGeometry geom, const CutoffConfig& cfg);

/// Applies (d/dsigma_mu d/dsigma_nu - z^mu z^nu box_sigma) to f(sigma_bar).
StressTensor tensor_from_radial(const RadialDerivatives& d, const MinkVec3& sigma);

StressTensor stress_closed(PlateGeometry geom, const CutoffConfig& cfg, bool subtract);

/// Subtracted <T^33>: the normal pressure on the plate.
double pressure(PlateGeometry geom, const CutoffConfig& cfg);

/// Energy per unit area a * <Tbar^00>.
double energy_density_area(PlateGeometry geom, const CutoffConfig& cfg);

/// Tbar^33 + dE/da, with dE/da by central difference over da at fixed sigma, Sigma.
/// da <= 0 selects the default 1e-4 * a.
double pressure_energy_residual(PlateGeometry geom, const CutoffConfig& cfg, double da = 0.0);

}  // namespace casimir
