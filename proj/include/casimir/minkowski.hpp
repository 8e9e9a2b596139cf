#pragma once

#include <array>

namespace casimir {

/// Contravariant (t, x, y) vector of the (2+1)-dimensional plate subspace.
/// Metric is mostly-plus: diag(-1, +1, +1).
struct MinkVec3 {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;

  double operator[](int i) const { return i == 0 ? t : (i == 1 ? x : y); }
  bool operator==(const MinkVec3&) const = default;
};

/// Diagonal of the (2+1) metric; covariant components are g[i] * v[i].
inline constexpr std::array<double, 3> kMetric3{-1.0, 1.0, 1.0};

double inner(const MinkVec3& u, const MinkVec3& v) noexcept;

/// Invariant magnitude sqrt(-sigma.sigma); throws NonTimelike unless strictly timelike.
double sigma_bar(const MinkVec3& sigma);

/// Unit direction in the transverse (x, y) plane.
struct Direction2 {
  double x = 1.0;
  double y = 0.0;
};

/// Lorentz boost with the given rapidity along `dir` (|dir| = 1 within 1e-12).
MinkVec3 boost(const MinkVec3& v, double rapidity, Direction2 dir);

/// 3x3 boost matrix Lambda^mu_nu acting on contravariant (t, x, y).
std::array<std::array<double, 3>, 3> boost_matrix(double rapidity, Direction2 dir);

/// Validated regularization state: vector cutoff sigma^mu and scalar cutoff Sigma.
class CutoffConfig {
 public:
  const MinkVec3& sigma() const noexcept { return sigma_; }
  double Sigma() const noexcept { return Sigma_; }
  double sigma_bar() const noexcept { return sigma_bar_; }
  /// Sigma / sigma_bar.
  double ratio() const noexcept { return Sigma_ / sigma_bar_; }

  friend CutoffConfig validate_cutoff(const MinkVec3& sigma, double Sigma);

 private:
  CutoffConfig(const MinkVec3& s, double Sig, double sb) : sigma_(s), Sigma_(Sig), sigma_bar_(sb) {}

  MinkVec3 sigma_;
  double Sigma_;
  double sigma_bar_;
};

CutoffConfig validate_cutoff(const MinkVec3& sigma, double Sigma);

/// Convenience: sigma = sigma_bar * (cosh eta, sinh eta * dir), Sigma = ratio * sigma_bar.
CutoffConfig make_cutoff(double sigma_bar, double ratio, double rapidity = 0.0, Direction2 dir = {});

}  // namespace casimir
