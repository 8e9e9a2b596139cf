#include "casimir/plates_closed.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "casimir/error.hpp"
#include "casimir/numerics/summation.hpp"

namespace casimir {

namespace {

using std::numbers::pi;

void check_pole(double a, double sigma_bar, double Sigma) {
  const double x = (sigma_bar - Sigma) * pi / a;
  if (!(x >= kPoleGuard)) {
    throw Error(ErrorCode::NearPole, "(sigma_bar - Sigma) pi / a = " + std::to_string(x) + " is below the pole guard");
  }
}

// B_{2k} / (2k)! for k = 1..10: coefficients of 1/(1 - e^-x) - 1/x - 1/2.
constexpr double kBernoulli[10] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
};

struct Profile {
  double g, g1, g2;
};

// G(x) = 1 / (1 - e^-x) and its x-derivatives.
Profile bose_profile(double x) {
  const double e = std::exp(-x);
  const double om = -std::expm1(-x);
  return {1.0 / om, -e / (om * om), e * (1.0 + e) / (om * om * om)};
}

// H(x) = G(x) - 1/x, smooth through x = 0. Series below x = 1 (radius of convergence 2 pi).
Profile subtracted_profile(double x) {
  if (x < 1.0) {
    double h = 0.5, h1 = 0.0, h2 = 0.0;
    const double x2 = x * x;
    double xp = 1.0;  // x^(2k-2)
    for (int k = 1; k <= 10; ++k) {
      const double c = kBernoulli[k - 1];
      const double p = 2.0 * k - 1.0;
      h += c * xp * x;
      h1 += c * p * xp;
      if (k > 1) h2 += c * p * (p - 1.0) * xp / x;
      xp *= x2;
    }
    return {h, h1, h2};
  }
  const Profile b = bose_profile(x);
  return {b.g - 1.0 / x, b.g1 + 1.0 / (x * x), b.g2 - 2.0 / (x * x * x)};
}

// f = P(sigma_bar) * g(x(sigma_bar)) with P = 1 / (2 pi a sigma_bar), x = (sigma_bar - Sigma) pi / a.
RadialDerivatives compose(double a, double sigma_bar, const Profile& g) {
  const double q = pi / a;
  const double P = 1.0 / (2.0 * pi * a * sigma_bar);
  const double P1 = -P / sigma_bar;
  const double P2 = 2.0 * P / (sigma_bar * sigma_bar);
  return {P * g.g, P1 * g.g + P * q * g.g1, P2 * g.g + 2.0 * P1 * q * g.g1 + P * q * q * g.g2};
}

}  // namespace

PlateGeometry plate_geometry(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "plate separation must be positive");
  return {a};
}

double delta_m(double m, double sigma_bar) {
  if (!(m >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mass must be non-negative");
  if (!(sigma_bar > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma_bar must be positive");
  return std::exp(-sigma_bar * m) / (2.0 * pi * sigma_bar);
}

double f_exact_raw(double a, double sigma_bar, double Sigma) {
  check_pole(a, sigma_bar, Sigma);
  const double x = (sigma_bar - Sigma) * pi / a;
  return 1.0 / (2.0 * pi * a * sigma_bar * -std::expm1(-x));
}

double f_exact(PlateGeometry geom, const CutoffConfig& cfg) {
  return f_exact_raw(geom.a, cfg.sigma_bar(), cfg.Sigma());
}

double f_truncated(PlateGeometry geom, const CutoffConfig& cfg, long N) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be non-negative");
  numerics::CompensatedSum sum;
  for (long n = 0; n <= N; ++n) {
    const double m = static_cast<double>(n) * pi / geom.a;
    sum.add(std::exp(cfg.Sigma() * m) * delta_m(m, cfg.sigma_bar()));
  }
  return sum.value() / geom.a;
}

double f_infinity(const CutoffConfig& cfg) {
  const double d = cfg.sigma_bar() - cfg.Sigma();
  if (!(d >= kPoleGuard * cfg.sigma_bar())) throw Error(ErrorCode::NearPole, "sigma_bar - Sigma too small");
  return 1.0 / (2.0 * pi * pi * cfg.sigma_bar() * d);
}

RadialDerivatives f_exact_radial(PlateGeometry geom, const CutoffConfig& cfg) {
  check_pole(geom.a, cfg.sigma_bar(), cfg.Sigma());
  const double x = (cfg.sigma_bar() - cfg.Sigma()) * pi / geom.a;
  return compose(geom.a, cfg.sigma_bar(), bose_profile(x));
}

RadialDerivatives f_subtracted_radial(PlateGeometry geom, const CutoffConfig& cfg) {
  check_pole(geom.a, cfg.sigma_bar(), cfg.Sigma());
  const double x = (cfg.sigma_bar() - cfg.Sigma()) * pi / geom.a;
  return compose(geom.a, cfg.sigma_bar(), subtracted_profile(x));
}

RadialDerivatives f_infinity_radial(const CutoffConfig& cfg) {
  const double s = cfg.sigma_bar();
  const double d = s - cfg.Sigma();
  if (!(d >= kPoleGuard * s)) throw Error(ErrorCode::NearPole, "sigma_bar - Sigma too small");
  const double K = 1.0 / (2.0 * pi * pi);
  return {K / (s * d), -K * (d + s) / (s * s * d * d), 2.0 * K * (d * d + s * d + s * s) / (s * s * s * d * d * d)};
}

StressTensor tensor_from_radial(const RadialDerivatives& d, const MinkVec3& sigma) {
  const double sb = sigma_bar(sigma);
  const double up[3] = {sigma.t, sigma.x, sigma.y};
  const double diag = -d.f1 / sb;
  const double outer = d.f2 / (sb * sb) - d.f1 / (sb * sb * sb);
  StressTensor t;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = mu; nu < 3; ++nu) {
      t.set(mu, nu, (mu == nu ? kMetric3[mu] * diag : 0.0) + up[mu] * up[nu] * outer);
    }
  }
  // -box f on the z z slot; box f = -f2 - 2 f1 / sigma_bar.
  t.set(3, 3, d.f2 + 2.0 * d.f1 / sb);
  return t;
}

StressTensor stress_closed(PlateGeometry geom, const CutoffConfig& cfg, bool subtract) {
  const RadialDerivatives d = subtract ? f_subtracted_radial(geom, cfg) : f_exact_radial(geom, cfg);
  return tensor_from_radial(d, cfg.sigma());
}

double pressure(PlateGeometry geom, const CutoffConfig& cfg) { return stress_closed(geom, cfg, true)(3, 3); }

double energy_density_area(PlateGeometry geom, const CutoffConfig& cfg) {
  return geom.a * stress_closed(geom, cfg, true)(0, 0);
}

double pressure_energy_residual(PlateGeometry geom, const CutoffConfig& cfg, double da) {
  if (da <= 0.0) da = 1e-4 * geom.a;
  if (!(da < geom.a)) throw Error(ErrorCode::InvalidArgument, "da must be smaller than a");
  const double e_plus = energy_density_area({geom.a + da}, cfg);
  const double e_minus = energy_density_area({geom.a - da}, cfg);
  return pressure(geom, cfg) + (e_plus - e_minus) / (2.0 * da);
}

}  // namespace casimir
