#pragma once

#include <cstddef>
#include <functional>

namespace mes {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t subdivisions = 0;  // bisections performed
};

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b] (Boost.Math).
/// Bisection depth is limited to floor(log2(max_subdivisions)). Throws
/// NumericError unless the error estimate ends below max(abs_tol, rel_tol * |value|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, std::size_t max_subdivisions);

}  // namespace mes
