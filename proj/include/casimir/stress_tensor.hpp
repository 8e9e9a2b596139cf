#pragma once

#include <array>

#include "casimir/minkowski.hpp"

namespace casimir {

/// Vacuum stress <T^{mu nu}> in (t, x, y, z) components, units length^-4.
/// Index 3 is the plate normal z.
struct StressTensor {
  std::array<std::array<double, 4>, 4> comps{};

  double operator()(int mu, int nu) const { return comps[mu][nu]; }

  /// Sets both (mu, nu) and (nu, mu) so symmetry holds by construction.
  void set(int mu, int nu, double v) {
    comps[mu][nu] = v;
    comps[nu][mu] = v;
  }
};

/// Diagonal of the 4D mostly-plus metric.
inline constexpr std::array<double, 4> kMetric4{-1.0, 1.0, 1.0, 1.0};

StressTensor operator+(const StressTensor& a, const StressTensor& b);
StressTensor operator-(const StressTensor& a, const StressTensor& b);
StressTensor operator*(double s, const StressTensor& t);

/// g_{mu nu} T^{mu nu}.
double trace(const StressTensor& t);
double max_abs(const StressTensor& t);
bool is_symmetric(const StressTensor& t);

/// Largest componentwise relative deviation of `a` from reference `b`. Components
/// whose reference magnitude is below floor_fraction * max|b| are measured against
/// max|b| instead, so structurally zero entries are compared on the tensor's scale.
double max_rel_deviation(const StressTensor& a, const StressTensor& b, double floor_fraction = 1e-10);

/// Lorentz transform of a contravariant tensor: boost on the (t, x, y) block, z untouched.
StressTensor lorentz_transform(const StressTensor& t, double rapidity, Direction2 dir);

}  // namespace casimir
