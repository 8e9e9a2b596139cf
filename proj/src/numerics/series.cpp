#include "casimir/numerics/series.hpp"

#include <cmath>
#include <vector>

#include "casimir/error.hpp"

namespace casimir::numerics {

long geometric_tail_n(double ratio_exponent, double eps) {
  if (!(ratio_exponent > 0.0)) throw Error(ErrorCode::InvalidArgument, "ratio_exponent must be positive");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  const double denom = -std::expm1(-ratio_exponent);
  const auto tail = [&](long n) { return std::exp(-ratio_exponent * static_cast<double>(n)) / denom; };
  const double slack = eps * (1.0 + 1e-12);

  const double guess = std::ceil(-std::log(eps * denom) / ratio_exponent);
  long n = guess > 0.0 ? static_cast<long>(guess) : 0;
  while (n > 0 && tail(n - 1) <= slack) --n;
  while (tail(n) > slack) ++n;
  return n;
}

double loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(ErrorCode::DegenerateInput, "loglog_slope needs at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorCode::DegenerateInput, "loglog_slope needs positive data");
    mx += std::log(x);
    my += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::DegenerateInput, "loglog_slope needs distinct abscissae");
  return sxy / sxx;
}

double richardson(std::span<const std::pair<double, double>> samples, int order) {
  if (samples.size() < 2) throw Error(ErrorCode::DegenerateInput, "richardson needs at least two samples");
  if (order < 1) throw Error(ErrorCode::DegenerateInput, "richardson order must be >= 1");
  const std::size_t n = samples.size();
  std::vector<double> t(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = std::pow(samples[i].first, order);
    p[i] = samples[i].second;
    for (std::size_t j = 0; j < i; ++j) {
      if (t[j] == t[i]) throw Error(ErrorCode::DegenerateInput, "richardson needs distinct step sizes");
    }
  }
  // Neville: p[i] becomes the value at t = 0 of the interpolant through points i..i+m.
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      p[i] = (t[i + m] * p[i] - t[i] * p[i + 1]) / (t[i + m] - t[i]);
    }
  }
  return p[0];
}

}  // namespace casimir::numerics
