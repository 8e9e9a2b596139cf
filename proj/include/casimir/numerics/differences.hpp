#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace casimir::numerics {

/// Step balancing truncation and round-off: cbrt(eps) for first derivatives,
/// eps^(1/4) for second derivatives, scaled by max(1, |x0|).
inline double default_step(double x0, int order) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double base = order == 1 ? std::cbrt(eps) : std::sqrt(std::sqrt(eps));
  return base * std::max(1.0, std::abs(x0));
}

/// Second-order central difference of the given derivative order (1 or 2).
double central_diff(const std::function<double(double)>& f, double x0, int order, double h);

inline double central_diff(const std::function<double(double)>& f, double x0, int order) {
  return central_diff(f, x0, order, default_step(x0, order));
}

}  // namespace casimir::numerics
