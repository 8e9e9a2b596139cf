#pragma once

// Conducting-sphere regularized energy: the contour-rotated E_sigma mode sum and
// the shift Delta E_sigma produced by a secondary cutoff e^{-Sigma nu}.

#include <vector>

#include "casimir/discrepancy.hpp"
#include "casimir/exec.hpp"
#include "casimir/numerics/quadrature.hpp"

namespace casimir {

struct SphereConfig {
  double a = 1.0;      ///< radius
  double sigma = 0.1;  ///< dimensionless primary cutoff
  double Sigma = 0.0;  ///< dimensionless secondary cutoff
  double phi = 0.8;    ///< contour angle, 0 < phi < pi/2
  long l_max = 200000; ///< hard cap on the angular-momentum sum
  double tol = 1e-10;  ///< absolute tolerance on E_sigma
  Exec exec = Exec::parallel;
};

/// Throws InvalidArgument unless a > 0, sigma > 0, Sigma >= 0, 0 < phi < pi/2, l_max >= 1, tol > 0.
void validate(const SphereConfig& cfg);

struct SphereEstimate {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  /// Last l included in the sum.
  long l_used = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Contour-rotated integral for one nu = l + 1/2 (real and imaginary parts of
/// e^{-i phi} int_0^inf dy exp(-i nu sigma y e^{-i phi}) y d/dy (1 + y^2 e^{-2 i phi})^{-3}).
numerics::QuadratureResultN<2> e_sigma_term(double nu, double sigma, double phi, double abs_tol);

/// Bound on |Re term(nu)| <= K exp(-c nu sigma), with c = kTailShift; returns K.
double e_sigma_tail_constant();
inline constexpr double kTailShift = 0.75;

/// Smallest l such that the bound on sum_{l' > l} stays below tol / 10.
long e_sigma_l_needed(const SphereConfig& cfg, bool with_secondary);

/// E_sigma = (1 / 4 pi a) sum_{l>=1} [e^{-Sigma nu}] Re(term(nu)). Throws TailTooFat if l_max is too small.
SphereEstimate e_sigma(const SphereConfig& cfg, bool with_secondary);

/// e_sigma(with secondary) - e_sigma(without).
SphereEstimate delta_e_direct(const SphereConfig& cfg);

/// int_0^inf y^2 / ((1 + y^2)^4 (y^2 + r^2)) dy; at r = 0 the integrand is (1 + y^2)^-4.
numerics::QuadratureResult i_of_r(double r, double tol);

/// -(3 Sigma / (2 pi a sigma^2)) i_of_r(Sigma / sigma).
SphereEstimate delta_e_integral(const SphereConfig& cfg);

/// Printed closed form: -(3 / (64 a sigma)) Sigma (Sigma^2 + 4 sigma Sigma + 5 sigma^2) / (Sigma + sigma)^4.
double delta_e_closed_paper(const SphereConfig& cfg);

/// Closed form consistent with the integral: -3 Sigma (Sigma^2 + 4 sigma Sigma + 5 sigma^2) / (64 a (Sigma + sigma)^4).
double delta_e_closed_derived(const SphereConfig& cfg);

struct SphereReportOptions {
  bool include_direct = true;
  double agree_threshold = 1e-3;
};

/// Compares the four Delta E routes on each grid point and fits sigma-scaling
/// exponents at fixed Sigma / sigma and at fixed Sigma.
std::vector<DiscrepancyReport> sphere_report(const std::vector<SphereConfig>& grid,
                                             const SphereReportOptions& options = {});

}  // namespace casimir
