#include "casimir/numerics/differences.hpp"

#include "casimir/error.hpp"

namespace casimir::numerics {

double central_diff(const std::function<double(double)>& f, double x0, int order, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "central_diff step must be positive");
  switch (order) {
    case 1:
      return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    case 2:
      return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
    default:
      throw Error(ErrorCode::InvalidArgument, "central_diff order must be 1 or 2");
  }
}

}  // namespace casimir::numerics
