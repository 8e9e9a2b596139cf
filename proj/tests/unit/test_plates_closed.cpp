#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "casimir/numerics/series.hpp"
#include "casimir/plates_closed.hpp"
#include "fd_oracle.hpp"
#include "helpers.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

const double kBM = -pi * pi / 240.0;

// (1/2pi) int_0^inf k e^{-sb w} / w dk, w = sqrt(k^2 + m^2): the rest-frame
// momentum integral that defines the kernel, done by brute-force Simpson.
double kernel_by_quadrature(double m, double sb) {
  const double kmax = 80.0 / sb;
  const int n = 400000;
  const double h = kmax / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double k = i * h;
    const double w = std::sqrt(k * k + m * m);
    const double v = w > 0 ? k * std::exp(-sb * w) / w : 1.0;
    s += v * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return s * h / 3.0 / (2.0 * pi);
}

}  // namespace

TEST_CASE("delta_m matches its defining momentum integral") {
  CHECK(delta_m(0.0, 1.0) == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-15));
  CHECK(delta_m(pi, 1.0) == doctest::Approx(kernel_by_quadrature(pi, 1.0)).epsilon(1e-9));
  CHECK(delta_m(pi, 1.0) == doctest::Approx(6.8777e-3).epsilon(1e-4));
  CHECK(delta_m(2.0, 0.5) == doctest::Approx(kernel_by_quadrature(2.0, 0.5)).epsilon(1e-9));
  CHECK(delta_m(2.0, 0.5) == doctest::Approx(0.1170996).epsilon(1e-6));
}

TEST_CASE("f_exact against the term-by-term sum") {
  const auto g1 = plate_geometry(1.0);
  const auto c = make_cutoff(0.1, 0.0);
  const double F = f_exact(g1, c);
  CHECK(F == doctest::Approx(5.9034).epsilon(1e-4));
  const long N = numerics::geometric_tail_n(0.1 * pi, 1e-14 * F);
  CHECK(close_rel(f_truncated(g1, c, N), F, 1e-12));
  CHECK(f_exact(g1, make_cutoff(50.0, 0.0)) == doctest::Approx(1.0 / (2 * pi * 50)).epsilon(1e-12));

  const auto g2 = plate_geometry(2.0);
  const auto c2 = make_cutoff(0.1, 0.5);
  const double x = (0.1 - 0.05) * pi / 2.0;
  CHECK(close_rel(f_truncated(g2, c2, numerics::geometric_tail_n(x, 1e-15)), f_exact(g2, c2), 1e-12));
}

TEST_CASE("f_truncated") {
  const auto g = plate_geometry(1.5);
  const auto c = make_cutoff(0.3, 0.4);
  CHECK(f_truncated(g, c, 0) == doctest::Approx(1.0 / (1.5 * 2 * pi * 0.3)).epsilon(1e-15));
  double prev = 0.0;
  for (long N = 0; N < 50; ++N) {
    const double v = f_truncated(g, c, N);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("f_infinity and the large-a limit") {
  CHECK(f_infinity(make_cutoff(1.0, 0.0)) == doctest::Approx(1 / (2 * pi * pi)).epsilon(1e-15));
  CHECK(f_infinity(make_cutoff(1.0, 0.5)) == doctest::Approx(1 / (pi * pi)).epsilon(1e-15));
  // F / F_inf - 1 = x / (1 - e^-x) - 1 ~ x / 2 with x = sigma_bar pi / a, so the
  // approach is first order in 1/a.
  const auto c = make_cutoff(1.0, 0.0);
  for (double a : {1e2, 1e4, 1e6}) {
    const double x = pi / a;
    CHECK(f_exact(plate_geometry(a), c) / f_infinity(c) - 1.0 == doctest::Approx(x / 2).epsilon(1e-3));
  }
  CHECK(close_rel(f_exact(plate_geometry(2e8), c), f_infinity(c), 1e-8));
  CHECK_ERROR_CODE(f_exact(plate_geometry(1e9), c), NearPole);
}

TEST_CASE("pole guard") {
  const auto g = plate_geometry(1.0);
  const auto c = make_cutoff(1.0, 1.0 - 1e-10);
  CHECK_ERROR_CODE(f_exact(g, c), NearPole);
  CHECK_ERROR_CODE(f_infinity(c), NearPole);
  CHECK_ERROR_CODE(stress_closed(g, c, true), NearPole);
}

TEST_CASE("tensor_from_radial") {
  const MinkVec3 s{1.3, 0.4, -0.2};
  const double sb = sigma_bar(s);
  for (double p : {-1.0, -2.0, 0.5, 3.0}) {
    const RadialDerivatives d{std::pow(sb, p), p * std::pow(sb, p - 1), p * (p - 1) * std::pow(sb, p - 2)};
    const StressTensor t = tensor_from_radial(d, s);
    CHECK(t(3, 3) == doctest::Approx(p * (p + 1) * std::pow(sb, p - 2)).epsilon(1e-13));
    const StressTensor ref = fd_tensor([p](double x) { return std::pow(x, p); }, s, 1e-3);
    CHECK(scaled_deviation(t, ref) <= 1e-8);
  }
  CHECK(max_abs(tensor_from_radial({2.0, 0.0, 0.0}, s)) == 0.0);
  const StressTensor rest = tensor_from_radial({1.0, -0.7, 0.9}, {0.8, 0.0, 0.0});
  CHECK(rest(0, 1) == 0.0);
  CHECK(rest(0, 2) == 0.0);
  CHECK(rest(1, 1) == rest(2, 2));
  CHECK_ERROR_CODE(tensor_from_radial({1, 1, 1}, {0.1, 1.0, 0.0}), NonTimelike);
}

TEST_CASE("analytic derivatives of F agree with finite differences") {
  const auto g = plate_geometry(1.0);
  for (double eta : {0.0, 0.4}) {
    const auto c = make_cutoff(0.5, 0.3, eta, {0.6, 0.8});
    const StressTensor t = stress_closed(g, c, false);
    const StressTensor ref =
        fd_tensor([&](double sb) { return f_exact_raw(1.0, sb, c.Sigma()); }, c.sigma(), 1e-3);
    CHECK(scaled_deviation(t, ref) <= 1e-6);
  }
}

TEST_CASE("stress_closed examples") {
  const auto g = plate_geometry(1.0);
  CHECK(close_rel(stress_closed(g, make_cutoff(0.01, 0.0), true)(3, 3), kBM, 1e-3));
  CHECK(close_rel(stress_closed(g, make_cutoff(0.01, 0.5), true)(3, 3), -0.0205617, 1e-3));
}

TEST_CASE("property: symmetric, traceless, boost covariant") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double a = 0.2 + 3.0 * u(rng);
    const double sb = a * (0.002 + 2.0 * u(rng));
    const double r = 0.95 * u(rng);
    const double eta = 2.0 * u(rng) - 1.0;
    const double ang = 6.3 * u(rng);
    const Direction2 d{std::cos(ang), std::sin(ang)};
    const auto g = plate_geometry(a);
    for (bool sub : {false, true}) {
      const StressTensor moving = stress_closed(g, make_cutoff(sb, r, eta, d), sub);
      CHECK(is_symmetric(moving));
      CHECK(std::abs(trace(moving)) <= 1e-10 * max_abs(moving));
      const StressTensor rest = stress_closed(g, make_cutoff(sb, r), sub);
      CHECK(rest(1, 1) == rest(2, 2));
      CHECK(max_rel_deviation(moving, lorentz_transform(rest, eta, d)) <= 1e-8);
    }
  }
}

TEST_CASE("subtracted tensor equals derivatives of F - F_inf and vanishes as a grows") {
  const auto c = make_cutoff(0.4, 0.25, 0.2);
  const auto g = plate_geometry(1.0);
  const StressTensor direct = stress_closed(g, c, false) - tensor_from_radial(f_infinity_radial(c), c.sigma());
  CHECK(max_rel_deviation(stress_closed(g, c, true), direct, 1e-6) <= 1e-9);
  double prev = max_abs(stress_closed(g, c, true));
  for (double a : {10.0, 100.0, 1000.0, 10000.0}) {
    const double m = max_abs(stress_closed(plate_geometry(a), c, true));
    CHECK(m < prev);
    prev = m;
  }
  CHECK(prev < 1e-3 * max_abs(stress_closed(g, c, true)));
}

TEST_CASE("pressure") {
  const auto g = plate_geometry(1.0);
  std::vector<std::pair<double, double>> pts;
  for (double sb : {0.02, 0.01, 0.005}) pts.emplace_back(sb, pressure(g, make_cutoff(sb, 0.0)));
  CHECK(close_rel(numerics::richardson(pts, 2), -0.04112335, 1e-7));
  CHECK(close_rel(pressure(g, make_cutoff(0.01, 0.75)), -0.01028084, 1e-3));
  // All lengths doubled: pressure scales as a^-4.
  for (double r : {0.0, 0.6}) {
    const double p1 = pressure(g, make_cutoff(0.05, r));
    const double p2 = pressure(plate_geometry(2.0), make_cutoff(0.1, r));
    CHECK(p2 / p1 == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("energy per area: a-dependent part and cutoff scaling") {
  const auto g1 = plate_geometry(1.0), g2 = plate_geometry(2.0);
  auto diff = [&](const CutoffConfig& c) { return energy_density_area(g1, c) - energy_density_area(g2, c); };
  CHECK(close_rel(diff(make_cutoff(0.01, 0.0)), -pi * pi / 720 * (1 - 1.0 / 8), 1e-3));

  // Closed form of the a-differenced energy (rest frame):
  // -pi^2/720 (1 - r^3)(7/8) - Sigma / (24 sigma_bar^3), up to O(sigma_bar^2).
  for (double sb : {0.04, 0.02, 0.01}) {
    const double r = 0.5, S = r * sb;
    const double expect = -pi * pi / 720 * (1 - r * r * r) * 7.0 / 8.0 - S / (24 * sb * sb * sb);
    CHECK(close_rel(diff(make_cutoff(sb, r)), expect, 1e-6));
  }

  // The Sigma-dependent remainder: slope -2 at fixed ratio, -3 at fixed Sigma.
  auto sigma_part = [&](double sb, double S) {
    const double r = S / sb;
    return std::abs(diff(make_cutoff(sb, r)) + pi * pi / 720 * (1 - r * r * r) * 7.0 / 8.0);
  };
  std::vector<std::pair<double, double>> fixed_r, fixed_S;
  for (double sb : {0.04, 0.02, 0.01}) {
    fixed_r.emplace_back(sb, sigma_part(sb, 0.5 * sb));
    fixed_S.emplace_back(sb, sigma_part(sb, 0.005));
  }
  CHECK(numerics::loglog_slope(fixed_r) == doctest::Approx(-2.0).epsilon(0.01));
  CHECK(numerics::loglog_slope(fixed_S) == doctest::Approx(-3.0).epsilon(0.01));

  const double rest = energy_density_area(g1, make_cutoff(0.05, 0.3));
  const double moving = energy_density_area(g1, make_cutoff(0.05, 0.3, 0.5));
  CHECK_FALSE(close_rel(rest, moving, 1e-3));
}

TEST_CASE("pressure/energy residual") {
  const auto g = plate_geometry(1.0);
  CHECK(std::abs(pressure_energy_residual(g, make_cutoff(0.005, 0.0))) <= 5e-6);
  // Analytic residual in the rest frame: pi^2/240 (r - r^3) + Sigma / (12 sigma_bar^3).
  const double r = 0.5, sb = 0.02, S = r * sb;
  const double expect = pi * pi / 240 * (r - r * r * r) + S / (12 * sb * sb * sb);
  const double v = pressure_energy_residual(g, make_cutoff(sb, r));
  CHECK(close_rel(v, expect, 1e-6));
  CHECK(v == doctest::Approx(104.18209).epsilon(1e-6));
}
