#pragma once

#include <span>
#include <utility>

namespace casimir::numerics {

/// Smallest N >= 0 with exp(-ratio_exponent * N) / (1 - exp(-ratio_exponent)) <= eps.
/// The comparison allows 1e-12 relative slack so closed-form boundary inputs land on N.
long geometric_tail_n(double ratio_exponent, double eps);

/// Least-squares slope of log y against log x. Throws DegenerateInput.
double loglog_slope(std::span<const std::pair<double, double>> points);

/// Extrapolates samples (h, f(h)) to h -> 0 assuming an error series in
/// h^order, h^(2 order), ...; uses Neville's scheme in t = h^order.
double richardson(std::span<const std::pair<double, double>> samples, int order);

}  // namespace casimir::numerics
