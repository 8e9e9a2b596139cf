#include <cmath>
#include <numbers>
#include <random>

#include "casimir/plates_oracle.hpp"
#include "helpers.hpp"

using namespace casimir;
using std::numbers::pi;

TEST_CASE("ModeSpectrum") {
  const auto m = ModeSpectrum::make(3, plate_geometry(2.0));
  CHECK(m.m_n == 3 * pi / 2.0);
  CHECK(m.omega(0.0) == m.m_n);
  CHECK(m.omega(4.0) == doctest::Approx(std::hypot(4.0, m.m_n)).epsilon(1e-15));
}

TEST_CASE("oracle reproduces the closed tensor") {
  const auto g = plate_geometry(1.0);
  const auto rest = make_cutoff(0.5, 0.0);
  const OracleResult r = stress_oracle(g, rest);
  CHECK(r.converged);
  CHECK(max_rel_deviation(r.tensor, stress_closed(g, rest, false)) <= 1e-6);
  CHECK(std::abs(r.tensor(0, 1)) <= r.abs_error_estimate + 1e-14 * max_abs(r.tensor));
  CHECK(std::abs(r.tensor(0, 2)) <= r.abs_error_estimate + 1e-14 * max_abs(r.tensor));

  const CutoffConfig boosted = validate_cutoff({0.5 * std::cosh(0.3), 0.5 * std::sinh(0.3), 0.0}, 0.1);
  const OracleResult b = stress_oracle(g, boosted);
  CHECK(b.converged);
  CHECK(max_rel_deviation(b.tensor, stress_closed(g, boosted, false)) <= 1e-5);
}

TEST_CASE("property: oracle tensor symmetric and traceless within its error") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 8; ++i) {
    const double a = 0.5 + u(rng);
    const auto c = make_cutoff(a * (0.2 + 0.8 * u(rng)), 0.5 * u(rng), u(rng) - 0.5, {0.0, 1.0});
    const auto g = plate_geometry(a);
    const OracleResult r = stress_oracle(g, c);
    CHECK(is_symmetric(r.tensor));
    CHECK(std::abs(trace(r.tensor)) <= std::max(1e-10 * max_abs(r.tensor), 4 * r.abs_error_estimate));
    CHECK(max_rel_deviation(r.tensor, stress_closed(g, c, false)) <= 1e-5);
  }
}

TEST_CASE("mode-sum truncation: doubling n_max changes nothing beyond the error estimate") {
  const auto g = plate_geometry(1.0);
  const auto c = make_cutoff(0.3, 0.4, 0.2);
  const OracleResult base = stress_oracle(g, c);
  OracleSpec doubled;
  doubled.n_max = 2 * base.n_max;
  const OracleResult more = stress_oracle(g, c, doubled);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      CHECK(std::abs(more.tensor(mu, nu) - base.tensor(mu, nu)) <= base.abs_error_estimate + more.abs_error_estimate);
}

TEST_CASE("negative control: a single k0 root breaks oracle equivalence") {
  const auto g = plate_geometry(1.0);
  const auto c = make_cutoff(0.5, 0.2, 0.3);
  OracleSpec spec;
  spec.roots = RootSelection::positive_only;
  const OracleResult r = stress_oracle(g, c, spec);
  CHECK(max_rel_deviation(r.tensor, stress_closed(g, c, false)) > 0.1);
}

TEST_CASE("serial and parallel oracle are bit-identical") {
  const auto g = plate_geometry(1.0);
  const auto c = make_cutoff(0.4, 0.3, 0.25, {0.6, 0.8});
  OracleSpec s, p;
  s.exec = Exec::serial;
  p.exec = Exec::parallel;
  CHECK(stress_oracle(g, c, s).tensor.comps == stress_oracle(g, c, p).tensor.comps);
}

TEST_CASE("stress_fd") {
  const auto g = plate_geometry(1.0);
  const auto c = make_cutoff(0.5, 0.0);
  const StressTensor fd = stress_fd(g, c, 1e-4);
  CHECK(max_rel_deviation(fd, stress_closed(g, c, false)) <= 1e-6);
  const OracleResult o = stress_oracle(g, c);
  CHECK(max_rel_deviation(fd, o.tensor) <= 1e-6);
  CHECK_ERROR_CODE(stress_fd(g, make_cutoff(1.0, 1.0 - 1e-10), 1e-4), NearPole);
}

TEST_CASE("eigenmodes satisfy the wave equation, wall conditions and transversality") {
  const auto g = plate_geometry(1.0);
  CHECK(eigenmode_check(1, 1, {1.0, 0.0}, g, 2001) <= 1e-6);
  CHECK(eigenmode_check(2, 2, {0.7, 0.3}, g, 2001) <= 1e-6);
  for (long n : {1L, 2L, 5L})
    for (int lambda : {1, 2}) CHECK(eigenmode_check(n, lambda, {0.3, -1.2}, plate_geometry(1.7), 2001) <= 1e-6);
  const EigenmodeViolation detuned = eigenmode_violation(1, 1, {1.0, 0.0}, g, 2001, 1.1);
  CHECK(detuned.ode >= 0.1);
  CHECK(detuned.boundary <= 1e-12);
}
