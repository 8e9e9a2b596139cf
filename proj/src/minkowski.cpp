#include "casimir/minkowski.hpp"

#include <cmath>
#include <string>

#include "casimir/error.hpp"

namespace casimir {

namespace {

bool finite(const MinkVec3& v) { return std::isfinite(v.t) && std::isfinite(v.x) && std::isfinite(v.y); }

void check_direction(Direction2 dir) {
  const double norm = std::hypot(dir.x, dir.y);
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    throw Error(ErrorCode::BadDirection, "boost direction must be a unit vector, |d| = " + std::to_string(norm));
  }
}

}  // namespace

double inner(const MinkVec3& u, const MinkVec3& v) noexcept { return -u.t * v.t + u.x * v.x + u.y * v.y; }

double sigma_bar(const MinkVec3& sigma) {
  const double s2 = -inner(sigma, sigma);
  if (!finite(sigma) || !(s2 > 0.0)) {
    throw Error(ErrorCode::NonTimelike, "cutoff vector must be strictly timelike");
  }
  return std::sqrt(s2);
}

std::array<std::array<double, 3>, 3> boost_matrix(double rapidity, Direction2 dir) {
  check_direction(dir);
  const double ch = std::cosh(rapidity);
  const double sh = std::sinh(rapidity);
  // Lambda = identity + (cosh - 1) P + sinh K on the (t, n) plane.
  std::array<std::array<double, 3>, 3> m{};
  const double n[3] = {0.0, dir.x, dir.y};
  m[0][0] = ch;
  for (int i = 1; i < 3; ++i) {
    m[0][i] = sh * n[i];
    m[i][0] = sh * n[i];
    for (int j = 1; j < 3; ++j) m[i][j] = (i == j ? 1.0 : 0.0) + (ch - 1.0) * n[i] * n[j];
  }
  return m;
}

MinkVec3 boost(const MinkVec3& v, double rapidity, Direction2 dir) {
  const auto m = boost_matrix(rapidity, dir);
  const double in[3] = {v.t, v.x, v.y};
  double out[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * in[j];
  return {out[0], out[1], out[2]};
}

CutoffConfig validate_cutoff(const MinkVec3& sigma, double Sigma) {
  if (!std::isfinite(Sigma)) throw Error(ErrorCode::InvalidArgument, "Sigma must be finite");
  const double sb = sigma_bar(sigma);
  if (!(sigma.t > 0.0)) throw Error(ErrorCode::NegativeTimeComponent, "sigma^0 must be positive");
  if (Sigma < 0.0) throw Error(ErrorCode::NegativeSigma, "Sigma must be non-negative");
  if (!(Sigma < sb)) {
    throw Error(ErrorCode::SigmaTooLarge, "propagator exists only for Sigma < sigma_bar (Sigma = " +
                                              std::to_string(Sigma) + ", sigma_bar = " + std::to_string(sb) + ")");
  }
  return CutoffConfig(sigma, Sigma, sb);
}

CutoffConfig make_cutoff(double sigma_bar_value, double ratio, double rapidity, Direction2 dir) {
  const MinkVec3 rest{sigma_bar_value, 0.0, 0.0};
  const MinkVec3 s = rapidity == 0.0 ? rest : boost(rest, rapidity, dir);
  return validate_cutoff(s, ratio * sigma_bar_value);
}

}  // namespace casimir
