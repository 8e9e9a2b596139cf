#pragma once

// Globally adaptive Gauss-Kronrod (7, 15) quadrature on finite intervals, with a
// rational map for [0, inf). Integrands may be scalar or std::array valued; the
// vector form integrates every component on one shared subdivision.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "casimir/numerics/summation.hpp"

namespace casimir::numerics {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

template <std::size_t N>
struct QuadratureResultN {
  std::array<double, N> value{};
  /// Max-norm error estimate over components.
  double abs_error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
  /// Initial partition: the interval is halved and each half is cut
  /// geometrically toward its outer endpoint this many times (0 = single interval).
  /// Guards against rules that sample only the flat part of a very wide interval.
  int graded_levels = 0;
};

/// Tolerance actually met by a converged result: max(abs_tol, rel_tol * |value|).
inline double target_tolerance(const QuadratureOptions& opt, double magnitude) {
  return std::max(opt.abs_tol, opt.rel_tol * magnitude);
}

namespace detail {

// Nodes and weights for the 15-point Kronrod rule and its embedded 7-point Gauss rule.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Segment {
  double lo;
  double hi;
  std::array<double, N> value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <std::size_t N, class F>
Segment<N> gk15(const F& f, double lo, double hi) {
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<std::array<double, N>, 15> fv;
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }

  Segment<N> seg{lo, hi, {}, 0.0};
  for (std::size_t c = 0; c < N; ++c) {
    const double fc = fv[7][c];
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
      const double f1 = fv[j][c];
      const double f2 = fv[14 - j][c];
      resk += kWgk[j] * (f1 + f2);
      resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv[j][c] - reskh) + std::abs(fv[14 - j][c] - reskh));

    const double absh = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= absh;
    resabs *= absh;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * epmach)) err = std::max(epmach * 50.0 * resabs, err);

    seg.value[c] = resk * half;
    seg.error = std::max(seg.error, err);
  }
  return seg;
}

template <std::size_t N>
double max_abs(const std::array<double, N>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline std::vector<double> initial_partition(double lo, double hi, int levels) {
  std::vector<double> pts{lo, hi};
  if (levels <= 0) return pts;
  const double w = hi - lo;
  pts.clear();
  for (int k = levels; k >= 1; --k) pts.push_back(lo + w * std::ldexp(1.0, -k));
  pts.insert(pts.begin(), lo);
  for (int k = 2; k <= levels; ++k) pts.push_back(hi - w * std::ldexp(1.0, -k));
  pts.push_back(hi);
  return pts;
}

}  // namespace detail

/// Adaptive G7K15 integration of a vector-valued integrand over [lo, hi].
template <std::size_t N, class F>
QuadratureResultN<N> integrate_vector(const F& f, double lo, double hi, const QuadratureOptions& opt) {
  using Seg = detail::Segment<N>;
  QuadratureResultN<N> out;
  std::priority_queue<Seg> heap;
  std::array<double, N> total{};
  double total_err = 0.0;

  const auto pts = detail::initial_partition(lo, hi, opt.graded_levels);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Seg s = detail::gk15<N>(f, pts[i], pts[i + 1]);
    out.evaluations += 15;
    for (std::size_t c = 0; c < N; ++c) total[c] += s.value[c];
    total_err += s.error;
    heap.push(s);
  }

  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
  bool roundoff_limited = false;
  while (total_err > target_tolerance(opt, detail::max_abs(total))) {
    if (static_cast<int>(heap.size()) >= opt.max_intervals) break;
    Seg worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.hi - worst.lo <= min_width || mid <= worst.lo || mid >= worst.hi) {
      roundoff_limited = true;
      break;
    }
    heap.pop();
    Seg left = detail::gk15<N>(f, worst.lo, mid);
    Seg right = detail::gk15<N>(f, mid, worst.hi);
    out.evaluations += 30;
    for (std::size_t c = 0; c < N; ++c) total[c] += left.value[c] + right.value[c] - worst.value[c];
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the final partition: the running totals accumulate cancellation error.
  std::array<CompensatedSum, N> acc;
  CompensatedSum err_acc;
  std::vector<Seg> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
  for (const Seg& s : segs) {
    for (std::size_t c = 0; c < N; ++c) acc[c].add(s.value[c]);
    err_acc.add(s.error);
  }
  for (std::size_t c = 0; c < N; ++c) out.value[c] = acc[c].value();
  out.abs_error_estimate = err_acc.value();
  out.converged = !roundoff_limited && out.abs_error_estimate <= target_tolerance(opt, detail::max_abs(out.value));
  return out;
}

/// Scalar adaptive integration with explicit options.
template <class F>
QuadratureResult integrate_scalar(const F& f, double lo, double hi, const QuadratureOptions& opt) {
  const auto r = integrate_vector<1>([&f](double x) { return std::array<double, 1>{f(x)}; }, lo, hi, opt);
  return {r.value[0], r.abs_error_estimate, r.evaluations, r.converged};
}

/// Maps [0, inf) onto [0, 1) by y = scale * u / (1 - u) and integrates there.
template <std::size_t N, class F>
QuadratureResultN<N> integrate_semi_infinite_vector(const F& f, double scale, const QuadratureOptions& opt) {
  auto mapped = [&f, scale](double u) {
    std::array<double, N> out{};
    const double w = 1.0 - u;
    if (w <= 0.0) return out;
    const double y = scale * u / w;
    const double jac = scale / (w * w);
    if (!std::isfinite(y) || !std::isfinite(jac)) return out;
    const std::array<double, N> v = f(y);
    for (std::size_t c = 0; c < N; ++c) out[c] = v[c] * jac;
    return out;
  };
  return integrate_vector<N>(mapped, 0.0, 1.0, opt);
}

/// Adaptive estimate of the integral of f over [lo, hi] with tol_abs = tol_rel = tol.
/// The initial partition is graded toward both endpoints so narrow features near an
/// end of a very wide interval are resolved.
QuadratureResult integrate_finite(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Integral of f over [0, inf); decay_hint sets the scale of the rational map.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double tol, double decay_hint);

}  // namespace casimir::numerics
