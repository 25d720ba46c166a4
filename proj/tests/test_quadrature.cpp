#include <cmath>

#include "doctest.h"
#include "mes/error.hpp"
#include "mes/quadrature.hpp"

using namespace mes;
using doctest::Approx;

TEST_CASE("integrate_adaptive on closed-form integrals") {
  CHECK(integrate_adaptive([](double x) { return x * x * x; }, 0, 2, 1e-12, 1e-15, 100).value ==
        Approx(4.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return std::exp(-x); }, 0, 30, 1e-12, 1e-15, 100).value ==
        Approx(1.0 - std::exp(-30.0)).epsilon(1e-12));
  // Endpoint singularity in the derivative forces subdivision.
  const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0, 1, 1e-6, 1e-15, std::size_t{1} << 50);
  CHECK(r.value == Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(r.subdivisions > 0);
  // Kink inside the interval.
  CHECK(integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0, 1, 1e-10, 1e-15, std::size_t{1} << 50).value ==
        Approx(0.045 + 0.245).epsilon(1e-10));
  CHECK(integrate_adaptive([](double) { return 1.0; }, 2, 2, 1e-8, 1e-12, 10).value == 0.0);
}

TEST_CASE("integrate_adaptive reports non-convergence") {
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, 1e-14, 1e-300, 3), NumericError);
  try {
    integrate_adaptive(f, 0.0, 1.0, 1e-14, 1e-300, 3);
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("did not converge") != std::string::npos);
  }
  CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, 0.0, 1e-10, 3), ArgumentError);
}
