#include "casimir/numerics/quadrature.hpp"

#include "casimir/error.hpp"

namespace casimir::numerics {

QuadratureResult integrate_finite(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "integrate_finite requires lo < hi");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "integrate_finite requires tol > 0");
  QuadratureOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.graded_levels = 24;
  return integrate_scalar(f, lo, hi, opt);
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double tol, double decay_hint) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "integrate_semi_infinite requires tol > 0");
  if (!(decay_hint > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay_hint must be positive");
  QuadratureOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.graded_levels = 8;
  const auto r = integrate_semi_infinite_vector<1>([&f](double y) { return std::array<double, 1>{f(y)}; },
                                                   decay_hint, opt);
  return {r.value[0], r.abs_error_estimate, r.evaluations, r.converged};
}

}  // namespace casimir::numerics
