#pragma once

// Brute-force route to the plate stress tensor: the k^0 delta function is resolved
// on both roots, the transverse momentum integral is done by adaptive quadrature,
// and the modes n = 0..n_max are summed explicitly.

#include <array>
#include <optional>

#include "casimir/exec.hpp"
#include "casimir/plates_closed.hpp"

namespace casimir {

/// Effective (2+1) mass of plate mode n: m_n = n pi / a.
struct ModeSpectrum {
  long n = 0;
  double m_n = 0.0;

  static ModeSpectrum make(long n, PlateGeometry geom);
  double omega(double kmag) const;
};

enum class RootSelection {
  both,
  /// Negative control: keeps only the k^0 = +omega root.
  positive_only,
};

struct OracleSpec {
  /// Highest mode index; empty selects it from the geometric tail bound.
  std::optional<long> n_max;
  /// Radial cutoff: the integrand exponent may drop this far below its peak.
  double k_max_factor = 40.0;
  double quad_tol = 1e-10;
  RootSelection roots = RootSelection::both;
  Exec exec = Exec::parallel;
};

struct OracleResult {
  StressTensor tensor;
  double abs_error_estimate = 0.0;
  long n_max = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Default n_max: geometric tail at quad_tol widened by a polynomial margin for
/// the m^2 growth of the per-mode integrals.
long default_oracle_n_max(PlateGeometry geom, const CutoffConfig& cfg, double quad_tol);

/// Unsubtracted <T^{mu nu}> by direct momentum-space quadrature.
OracleResult stress_oracle(PlateGeometry geom, const CutoffConfig& cfg, const OracleSpec& spec = {});

/// Per-mode contribution (already weighted by e^{Sigma m} / a). Exposed for tests
/// and the benchmark.
OracleResult oracle_mode(PlateGeometry geom, const CutoffConfig& cfg, long n, const OracleSpec& spec,
                         double abs_tol);

/// The same tensor assembled from second-order central differences of F over the
/// three contravariant sigma components, with step h.
StressTensor stress_fd(PlateGeometry geom, const CutoffConfig& cfg, double h);

struct EigenmodeViolation {
  double ode = 0.0;
  double boundary = 0.0;
  double divergence = 0.0;
  double max() const;
};

/// Samples the polarization-lambda eigenfunction of mode n (n >= 1) on a uniform
/// z-grid and measures, relative to the mode's scale: the residual of
/// [d^2/dz^2 + m^2] A = 0 (mass scaled by mass_scale), the in-plane components at
/// z = 0 and z = a, and the divergence i k.A_perp + dA_z/dz. Derivatives use
/// fourth-order central differences.
EigenmodeViolation eigenmode_violation(long n, int lambda, std::array<double, 2> k, PlateGeometry geom,
                                       long z_samples, double mass_scale = 1.0);

double eigenmode_check(long n, int lambda, std::array<double, 2> k, PlateGeometry geom, long z_samples);

}  // namespace casimir
