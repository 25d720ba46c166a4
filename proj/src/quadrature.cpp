#include "mes/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mes/error.hpp"

namespace mes {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, std::size_t max_subdivisions) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ArgumentError("quadrature tolerances must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw ArgumentError("quadrature bounds must be finite");
  if (max_subdivisions < 1) throw ArgumentError("max_subdivisions must be positive");
  if (a == b) return {};

  const auto depth = static_cast<unsigned>(std::bit_width(max_subdivisions) - 1);
  std::size_t evaluations = 0;
  auto counted = [&](double x) {
    ++evaluations;
    return f(x);
  };
  QuadratureResult out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(counted, a, b, depth, rel_tol, &out.error);
  out.subdivisions = (evaluations / 15 - 1) / 2;

  const double target = std::max(abs_tol, rel_tol * std::abs(out.value));
  if (!std::isfinite(out.value) || !(out.error <= target)) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge within bisection depth " << depth
        << ": value=" << out.value << " error estimate=" << out.error << " target=" << target;
    throw NumericError(msg.str());
  }
  return out;
}

}  // namespace mes
