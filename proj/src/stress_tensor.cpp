#include "casimir/stress_tensor.hpp"

#include <algorithm>
#include <cmath>

namespace casimir {

StressTensor operator+(const StressTensor& a, const StressTensor& b) {
  StressTensor r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.comps[i][j] = a.comps[i][j] + b.comps[i][j];
  return r;
}

StressTensor operator-(const StressTensor& a, const StressTensor& b) {
  StressTensor r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.comps[i][j] = a.comps[i][j] - b.comps[i][j];
  return r;
}

StressTensor operator*(double s, const StressTensor& t) {
  StressTensor r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.comps[i][j] = s * t.comps[i][j];
  return r;
}

double trace(const StressTensor& t) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += kMetric4[i] * t.comps[i][i];
  return s;
}

double max_abs(const StressTensor& t) {
  double m = 0.0;
  for (const auto& row : t.comps)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

bool is_symmetric(const StressTensor& t) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (t.comps[i][j] != t.comps[j][i]) return false;
  return true;
}

double max_rel_deviation(const StressTensor& a, const StressTensor& b, double floor_fraction) {
  const double scale = max_abs(b);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double diff = std::abs(a.comps[i][j] - b.comps[i][j]);
      if (diff == 0.0) continue;
      double ref = std::abs(b.comps[i][j]);
      if (ref < floor_fraction * scale) ref = scale;
      worst = std::max(worst, ref > 0.0 ? diff / ref : diff);
    }
  }
  return worst;
}

StressTensor lorentz_transform(const StressTensor& t, double rapidity, Direction2 dir) {
  const auto m3 = boost_matrix(rapidity, dir);
  std::array<std::array<double, 4>, 4> L{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L[i][j] = m3[i][j];
  L[3][3] = 1.0;

  StressTensor out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += L[mu][a] * L[nu][b] * t.comps[a][b];
      out.set(mu, nu, s);
    }
  }
  return out;
}

}  // namespace casimir
