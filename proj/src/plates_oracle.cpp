#include "casimir/plates_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "casimir/error.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/series.hpp"
#include "casimir/numerics/summation.hpp"

namespace casimir {

namespace {

using std::numbers::pi;
using Comps = std::array<double, 7>;

// Packed component order of the oracle integrand.
constexpr int kIndex[7][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}, {3, 3}};

StressTensor unpack(const Comps& c) {
  StressTensor t;
  for (int i = 0; i < 7; ++i) t.set(kIndex[i][0], kIndex[i][1], c[i]);
  return t;
}

struct ModeIntegrand {
  double sigma0;
  double sx;
  double sy;
  double m;
  double prefactor;  // e^{Sigma m} / (4 pi^2 a)
  bool both_roots;

  // Sum over k^0 = +-omega of (k / 2 omega) e^{sigma.k eps(k0)} [k^mu k^nu + z z m^2] at (k, theta).
  Comps operator()(double k, double theta) const {
    const double kx = k * std::cos(theta);
    const double ky = k * std::sin(theta);
    const double w = std::sqrt(k * k + m * m);
    const double base = -sigma0 * w;
    const double proj = sx * kx + sy * ky;
    const double wp = std::exp(base + proj);
    const double wm = both_roots ? std::exp(base - proj) : 0.0;
    const double even = wp + wm;
    const double odd = wp - wm;  // k^0 flips sign on the negative root
    const double jac = prefactor * k / (2.0 * w);
    return {jac * w * w * even,  jac * w * kx * odd, jac * w * ky * odd, jac * kx * kx * even,
            jac * kx * ky * even, jac * ky * ky * even, jac * m * m * even};
  }
};

// Largest k needed: past the peak of -sigma0 omega + |s| k the exponent must fall by `drop`.
double radial_cutoff(double sigma0, double s, double sbar, double m, double drop) {
  const auto phase = [&](double k) { return -sigma0 * std::sqrt(k * k + m * m) + s * k; };
  const double kpeak = m * s / sbar;
  const double target = phase(kpeak) - drop;
  double K = kpeak + drop / (sigma0 - s);
  while (phase(K) > target) K *= 2.0;
  return K;
}

}  // namespace

ModeSpectrum ModeSpectrum::make(long n, PlateGeometry geom) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "mode index must be non-negative");
  return {n, static_cast<double>(n) * pi / geom.a};
}

double ModeSpectrum::omega(double kmag) const { return std::sqrt(kmag * kmag + m_n * m_n); }

long default_oracle_n_max(PlateGeometry geom, const CutoffConfig& cfg, double quad_tol) {
  const double ratio = (cfg.sigma_bar() - cfg.Sigma()) * pi / geom.a;
  const long base = numerics::geometric_tail_n(ratio, quad_tol);
  const double margin = 3.0 * std::log1p(static_cast<double>(base) * ratio) / ratio;
  return base + static_cast<long>(std::ceil(margin));
}

OracleResult oracle_mode(PlateGeometry geom, const CutoffConfig& cfg, long n, const OracleSpec& spec,
                         double abs_tol) {
  const ModeSpectrum mode = ModeSpectrum::make(n, geom);
  const MinkVec3& sg = cfg.sigma();
  const double s = std::hypot(sg.x, sg.y);
  const ModeIntegrand integrand{sg.t,
                                sg.x,
                                sg.y,
                                mode.m_n,
                                std::exp(cfg.Sigma() * mode.m_n) / (4.0 * pi * pi * geom.a),
                                spec.roots == RootSelection::both};
  const double K = radial_cutoff(sg.t, s, cfg.sigma_bar(), mode.m_n, spec.k_max_factor);

  numerics::QuadratureOptions outer;
  outer.abs_tol = abs_tol;
  outer.rel_tol = spec.quad_tol;
  outer.graded_levels = 2;

  OracleResult res;
  if (sg.x == 0.0 && sg.y == 0.0) {
    // Rest frame: the angular integral is analytic (<cos^2> = <sin^2> = 1/2, odd moments vanish).
    auto radial = [&](double k) {
      const Comps c = integrand(k, 0.0);  // theta = 0: kx = k, ky = 0
      return Comps{2.0 * pi * c[0], 0.0, 0.0, pi * c[3], 0.0, pi * c[3], 2.0 * pi * c[6]};
    };
    const auto r = numerics::integrate_vector<7>(radial, 0.0, K, outer);
    res.tensor = unpack(r.value);
    res.abs_error_estimate = r.abs_error_estimate;
    res.evaluations = r.evaluations;
    res.converged = r.converged;
  } else {
    const double theta0 = std::atan2(sg.y, sg.x);
    long inner_evals = 0;
    bool inner_ok = true;
    numerics::QuadratureOptions inner;
    inner.abs_tol = abs_tol / (10.0 * K);
    inner.rel_tol = 0.1 * spec.quad_tol;
    auto radial = [&](double k) {
      auto angular = [&](double theta) { return integrand(k, theta); };
      const auto r = numerics::integrate_vector<7>(angular, theta0 - pi, theta0 + pi, inner);
      inner_evals += r.evaluations;
      inner_ok = inner_ok && r.converged;
      return r.value;
    };
    const auto r = numerics::integrate_vector<7>(radial, 0.0, K, outer);
    res.tensor = unpack(r.value);
    res.abs_error_estimate = r.abs_error_estimate;
    res.evaluations = r.evaluations + inner_evals;
    res.converged = r.converged && inner_ok;
  }
  res.n_max = n;
  return res;
}

OracleResult stress_oracle(PlateGeometry geom, const CutoffConfig& cfg, const OracleSpec& spec) {
  if (!(spec.quad_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "quad_tol must be positive");
  const long n_max = spec.n_max ? *spec.n_max : default_oracle_n_max(geom, cfg, spec.quad_tol);
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative");

  std::vector<OracleResult> modes(static_cast<std::size_t>(n_max) + 1);
  modes[0] = oracle_mode(geom, cfg, 0, spec, 1e-300);
  const double abs_tol = spec.quad_tol * max_abs(modes[0].tensor) / static_cast<double>(n_max + 1);

  if (spec.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long n = 1; n <= n_max; ++n) modes[n] = oracle_mode(geom, cfg, n, spec, abs_tol);
  } else {
    for (long n = 1; n <= n_max; ++n) modes[n] = oracle_mode(geom, cfg, n, spec, abs_tol);
  }

  std::array<numerics::CompensatedSum, 7> acc;
  numerics::CompensatedSum err;
  OracleResult out;
  out.converged = true;
  for (const OracleResult& m : modes) {
    for (int i = 0; i < 7; ++i) acc[i].add(m.tensor(kIndex[i][0], kIndex[i][1]));
    err.add(m.abs_error_estimate);
    out.evaluations += m.evaluations;
    out.converged = out.converged && m.converged;
  }
  Comps total{};
  for (int i = 0; i < 7; ++i) total[i] = acc[i].value();
  out.tensor = unpack(total);

  // Geometric bound on the modes beyond n_max, scaled from the last computed mode.
  const double ratio = (cfg.sigma_bar() - cfg.Sigma()) * pi / geom.a;
  const double tail = max_abs(modes.back().tensor) * std::exp(-ratio) / -std::expm1(-ratio);
  out.abs_error_estimate = err.value() + tail;
  out.n_max = n_max;
  return out;
}

StressTensor stress_fd(PlateGeometry geom, const CutoffConfig& cfg, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const MinkVec3 s0 = cfg.sigma();
  const double Sigma = cfg.Sigma();
  auto F = [&](const std::array<double, 3>& d) {
    const MinkVec3 s{s0.t + d[0], s0.x + d[1], s0.y + d[2]};
    return f_exact_raw(geom.a, sigma_bar(s), Sigma);
  };

  // D[i][j] = d^2 F / d sigma^i d sigma^j (contravariant components).
  double D[3][3];
  const double f0 = F({0.0, 0.0, 0.0});
  for (int i = 0; i < 3; ++i) {
    std::array<double, 3> p{}, m{};
    p[i] = h;
    m[i] = -h;
    D[i][i] = (F(p) - 2.0 * f0 + F(m)) / (h * h);
    for (int j = i + 1; j < 3; ++j) {
      std::array<double, 3> pp{}, pm{}, mp{}, mm{};
      pp[i] = h, pp[j] = h;
      pm[i] = h, pm[j] = -h;
      mp[i] = -h, mp[j] = h;
      mm[i] = -h, mm[j] = -h;
      D[i][j] = D[j][i] = (F(pp) - F(pm) - F(mp) + F(mm)) / (4.0 * h * h);
    }
  }

  // d/dsigma_mu = g^{mu mu} d/dsigma^mu for the diagonal metric.
  StressTensor t;
  double box = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    box += kMetric3[mu] * D[mu][mu];
    for (int nu = mu; nu < 3; ++nu) t.set(mu, nu, kMetric3[mu] * kMetric3[nu] * D[mu][nu]);
  }
  t.set(3, 3, -box);
  return t;
}

double EigenmodeViolation::max() const { return std::max({ode, boundary, divergence}); }

EigenmodeViolation eigenmode_violation(long n, int lambda, std::array<double, 2> k, PlateGeometry geom,
                                       long z_samples, double mass_scale) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "eigenmode check needs n >= 1");
  if (lambda != 1 && lambda != 2) throw Error(ErrorCode::InvalidArgument, "polarization must be 1 or 2");
  if (z_samples < 5) throw Error(ErrorCode::InvalidArgument, "need at least 5 z samples");
  const double kmag = std::hypot(k[0], k[1]);
  if (!(kmag > 0.0)) throw Error(ErrorCode::InvalidArgument, "eigenmode check needs |k| > 0");

  using cplx = std::complex<double>;
  using Field = std::array<cplx, 3>;
  const double a = geom.a;
  const double m = static_cast<double>(n) * pi / a;
  const double w = std::sqrt(kmag * kmag + m * m);
  const double norm = std::sqrt(2.0 / a);
  const cplx I(0.0, 1.0);

  auto field = [&](double z) -> Field {
    if (lambda == 1) {
      // kbar_i = eps^{ij} k_j
      const double s = norm * std::sin(m * z) / kmag;
      return {cplx(k[1] * s), cplx(-k[0] * s), cplx(0.0)};
    }
    // (z^i omega^2 + dz grad^i) cos(mz) e^{ik.x} / (|k| omega)
    const double s = -m * norm * std::sin(m * z) / (kmag * w);
    return {I * k[0] * s, I * k[1] * s, cplx((w * w - m * m) * norm * std::cos(m * z) / (kmag * w))};
  };

  const long N = z_samples;
  const double h = a / static_cast<double>(N - 1);
  std::vector<Field> A(static_cast<std::size_t>(N));
  double amp = 0.0;
  for (long j = 0; j < N; ++j) {
    A[j] = field(a * static_cast<double>(j) / static_cast<double>(N - 1));
    for (const cplx& c : A[j]) amp = std::max(amp, std::abs(c));
  }

  EigenmodeViolation v;
  const double mt = mass_scale * m;
  for (long j = 2; j + 2 < N; ++j) {
    for (int c = 0; c < 3; ++c) {
      const cplx d2 = (-A[j - 2][c] + 16.0 * A[j - 1][c] - 30.0 * A[j][c] + 16.0 * A[j + 1][c] - A[j + 2][c]) /
                      (12.0 * h * h);
      v.ode = std::max(v.ode, std::abs(d2 + mt * mt * A[j][c]) / (m * m * amp));
    }
    const cplx dz = (A[j - 2][2] - 8.0 * A[j - 1][2] + 8.0 * A[j + 1][2] - A[j + 2][2]) / (12.0 * h);
    const cplx div = I * (k[0] * A[j][0] + k[1] * A[j][1]) + dz;
    v.divergence = std::max(v.divergence, std::abs(div) / (std::max(m, kmag) * amp));
  }
  for (long j : {0L, N - 1}) {
    v.boundary = std::max({v.boundary, std::abs(A[j][0]) / amp, std::abs(A[j][1]) / amp});
    // z.B = i (kx Ay - ky Ax)
    const cplx bz = I * (k[0] * A[j][1] - k[1] * A[j][0]);
    v.boundary = std::max(v.boundary, std::abs(bz) / (kmag * amp));
  }
  return v;
}

double eigenmode_check(long n, int lambda, std::array<double, 2> k, PlateGeometry geom, long z_samples) {
  return eigenmode_violation(n, lambda, k, geom, z_samples).max();
}

}  // namespace casimir
