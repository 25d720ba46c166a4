#pragma once

// Ground truth for the two simulation models: exact marginal and joint
// survival functions, marginal quantiles, the true conditional tail
// expectation by quadrature, and the asymptotic constants.

#include <cstddef>

#include "mes/models.hpp"

namespace mes {

enum class Margin { X, Y };

struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double truncation_quantile = 1.0 - 1e-12;  // X quantile where numeric integration stops
  std::size_t max_subdivisions = 2000;

  void validate() const;
};

/// Constants of the joint tail c(x, y) = d * min(x, y)^(1/eta) and the x tail index.
struct TailDependence {
  double gamma1 = 0.0;
  double eta = 0.0;
  double d = 0.0;
};

double marginal_survival(const ModelSpec& spec, Margin margin, double v);
double marginal_cdf(const ModelSpec& spec, Margin margin, double v);

/// P(X > x, Y > y), evaluated without cancellation for large arguments.
double joint_survival(const ModelSpec& spec, double x, double y);

/// Value v with F(v) = q by bracketing and bisection; q = 0 gives the support minimum 1.
double marginal_quantile(const ModelSpec& spec, Margin margin, double q);

/// Value v with P(margin > v) = tail_prob, for tail_prob in (0, 1]. More
/// accurate than marginal_quantile(1 - tail_prob) for tiny tail probabilities.
double marginal_tail_quantile(const ModelSpec& spec, Margin margin, double tail_prob);

/// E[X | Y > U2(1/p)] for p in (0, 1].
double true_theta_p(const ModelSpec& spec, double p, const QuadratureSettings& settings = {});

/// Requires gamma_z1 < gamma_z2 == gamma_z3 < 1 and eta > 1/2, the regime in
/// which the joint tail has the min-form above. Throws ArgumentError otherwise.
TailDependence tail_dependence(const ModelSpec& spec);

/// Integral of c(x^(-1/gamma1), 1) over (0, inf) = d / (1 - eta gamma1).
double limit_constant(const ModelSpec& spec);

/// (integral of c(x, 1) d(x^-gamma1))^-2 in closed form.
double asymptotic_sigma2(const ModelSpec& spec);

/// theta_{1/t} / (t^(1 - 1/eta) U1(t)); tends to limit_constant as t grows.
double limit_ratio(const ModelSpec& spec, double t, const QuadratureSettings& settings = {});

}  // namespace mes
