#pragma once

// Test-side reference for (d/dsigma_mu d/dsigma_nu - z z box) f(sigma_bar), built
// from plain fourth-order finite differences in the contravariant components.

#include <algorithm>
#include <cmath>
#include <functional>

#include "casimir/minkowski.hpp"
#include "casimir/stress_tensor.hpp"

inline casimir::StressTensor fd_tensor(const std::function<double(double)>& f_of_sigma_bar,
                                       const casimir::MinkVec3& sigma, double h) {
  using casimir::MinkVec3;
  auto F = [&](double dt, double dx, double dy) {
    const MinkVec3 s{sigma.t + dt, sigma.x + dx, sigma.y + dy};
    return f_of_sigma_bar(std::sqrt(s.t * s.t - s.x * s.x - s.y * s.y));
  };
  auto shifted = [&](int i, double a, int j, double b) {
    double d[3] = {0, 0, 0};
    d[i] += a;
    d[j] += b;
    return F(d[0], d[1], d[2]);
  };
  double D[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        D[i][i] = (-shifted(i, 2 * h, i, 0) + 16 * shifted(i, h, i, 0) - 30 * F(0, 0, 0) + 16 * shifted(i, -h, i, 0) -
                   shifted(i, -2 * h, i, 0)) /
                  (12 * h * h);
      } else {
        // Second-order cross stencil, Richardson-combined over h and h/2.
        auto cross = [&](double e) {
          return (shifted(i, e, j, e) - shifted(i, e, j, -e) - shifted(i, -e, j, e) + shifted(i, -e, j, -e)) / (4 * e * e);
        };
        D[i][j] = (4 * cross(h / 2) - cross(h)) / 3;
      }
    }
  }
  // Raising both indices of d/dsigma^mu d/dsigma^nu: T^{mu nu} = g^mu g^nu D_{mu nu}.
  const double g[3] = {-1, 1, 1};
  casimir::StressTensor t;
  double box = 0.0;
  for (int i = 0; i < 3; ++i) {
    box += g[i] * D[i][i];
    for (int j = i; j < 3; ++j) t.set(i, j, g[i] * g[j] * D[i][j]);
  }
  t.set(3, 3, -box);
  return t;
}

// max |a - b| over components, relative to max |b|.
inline double scaled_deviation(const casimir::StressTensor& a, const casimir::StressTensor& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m / casimir::max_abs(b);
}
