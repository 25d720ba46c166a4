#include "mes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "mes/error.hpp"
#include "mes/quadrature.hpp"

namespace mes {

namespace {

constexpr int kBisectionCap = 200;

double pareto_survival(double z, double gamma) { return z <= 1.0 ? 1.0 : std::pow(z, -1.0 / gamma); }

// Integral of z^(-a) over [c, inf), a > 1.
double power_tail(double c, double a) { return std::pow(c, 1.0 - a) / (a - 1.0); }

void require_finite_mean(const ModelSpec& spec) {
  spec.validate();
  for (double g : {spec.gamma_z1, spec.gamma_z2, spec.gamma_z3}) {
    if (!(g < 1.0)) throw ArgumentError("oracle requires all Pareto gammas below 1 (finite mean)");
  }
}

// Integral of P(X > x, Y > y) over x in [c, inf), valid for c >= max(y, 1).
double joint_tail_integral(const ModelSpec& spec, double c, double y) {
  const double a1 = 1.0 / spec.gamma_z1;
  const double a2 = 1.0 / spec.gamma_z2;
  if (spec.variant == ModelVariant::Example1) {
    // For x >= y: S1(x) - S1(x) S2(x) + S2(x) S_Y(y).
    return power_tail(c, a1) - power_tail(c, a1 + a2) +
           marginal_survival(spec, Margin::Y, y) * power_tail(c, a2);
  }
  const double b = spec.bernoulli_p;
  return b * power_tail(c, a1) + (1.0 - b) * pareto_survival(y, spec.gamma_z3) * power_tail(c, a2);
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ArgumentError("quadrature tolerances must be positive");
  if (!(truncation_quantile > 0.0 && truncation_quantile < 1.0)) {
    throw ArgumentError("truncation quantile must lie in (0,1)");
  }
  if (max_subdivisions < 1) throw ArgumentError("max_subdivisions must be positive");
}

double marginal_survival(const ModelSpec& spec, Margin margin, double v) {
  const double s1 = pareto_survival(v, spec.gamma_z1);
  const double s_other = pareto_survival(v, margin == Margin::X ? spec.gamma_z2 : spec.gamma_z3);
  if (spec.variant == ModelVariant::Example1) return s1 + s_other - s1 * s_other;
  return spec.bernoulli_p * s1 + (1.0 - spec.bernoulli_p) * s_other;
}

double marginal_cdf(const ModelSpec& spec, Margin margin, double v) {
  return 1.0 - marginal_survival(spec, margin, v);
}

double joint_survival(const ModelSpec& spec, double x, double y) {
  const double s2x = pareto_survival(x, spec.gamma_z2);
  const double s3y = pareto_survival(y, spec.gamma_z3);
  if (spec.variant == ModelVariant::Example2) {
    return spec.bernoulli_p * pareto_survival(std::max(x, y), spec.gamma_z1) +
           (1.0 - spec.bernoulli_p) * s2x * s3y;
  }
  // Condition on Z1: above max(x,y) both hold; between min and max only the
  // smaller threshold is met by Z1 and the other needs its own Z; below min
  // both need Z2 > x and Z3 > y.
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  const double s1_hi = pareto_survival(hi, spec.gamma_z1);
  const double s1_lo = pareto_survival(lo, spec.gamma_z1);
  const double s_other_hi = x >= y ? s2x : s3y;
  return s1_hi + (s1_lo - s1_hi) * s_other_hi + (1.0 - s1_lo) * s2x * s3y;
}

double marginal_tail_quantile(const ModelSpec& spec, Margin margin, double tail_prob) {
  spec.validate();
  if (!(tail_prob > 0.0 && tail_prob <= 1.0)) throw ArgumentError("tail probability must lie in (0,1]");
  if (tail_prob == 1.0) return 1.0;

  double lo = 1.0;
  double hi = 2.0;
  int iterations = 0;
  while (marginal_survival(spec, margin, hi) > tail_prob) {
    lo = hi;
    hi *= 2.0;
    if (++iterations > kBisectionCap || !std::isfinite(hi)) {
      throw NumericError("could not bracket the quantile for tail probability " + std::to_string(tail_prob));
    }
  }
  for (int i = 0; i < kBisectionCap && hi / lo - 1.0 > 4e-16; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    if (marginal_survival(spec, margin, mid) > tail_prob) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double marginal_quantile(const ModelSpec& spec, Margin margin, double q) {
  if (!(q >= 0.0 && q < 1.0)) throw ArgumentError("quantile level must lie in [0,1)");
  return marginal_tail_quantile(spec, margin, 1.0 - q);
}

double true_theta_p(const ModelSpec& spec, double p, const QuadratureSettings& settings) {
  require_finite_mean(spec);
  settings.validate();
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("p must lie in (0,1]");

  const double qy = marginal_tail_quantile(spec, Margin::Y, p);
  const double knee = std::max(1.0, qy);
  const double cut =
      std::max(knee, marginal_tail_quantile(spec, Margin::X, 1.0 - settings.truncation_quantile));

  auto integrand = [&](double x) { return joint_survival(spec, x, qy) / p; };
  auto in_log = [&](double u) {
    const double x = std::exp(u);
    return integrand(x) * x;
  };

  auto piece = [&](const std::function<double(double)>& f, double a, double b, const char* name) {
    try {
      return integrate_adaptive(f, a, b, settings.rel_tol, settings.abs_tol, settings.max_subdivisions).value;
    } catch (const NumericError& e) {
      std::ostringstream msg;
      msg << "true_theta_p(" << to_string(spec.variant) << ", p=" << p << "), " << name
          << " piece: " << e.what();
      throw NumericError(msg.str());
    }
  };

  // X >= 1 almost surely, so the integrand is constant on [0, 1].
  double total = piece(integrand, 0.0, 1.0, "[0,1]");
  if (knee > 1.0) total += piece(in_log, 0.0, std::log(knee), "[1,q_y]");
  if (cut > knee) total += piece(in_log, std::log(knee), std::log(cut), "[q_y,cut]");
  total += joint_tail_integral(spec, cut, qy) / p;
  return total;
}

TailDependence tail_dependence(const ModelSpec& spec) {
  require_finite_mean(spec);
  if (!(spec.gamma_z1 < spec.gamma_z2) || spec.gamma_z2 != spec.gamma_z3) {
    throw ArgumentError("closed-form tail constants need gamma_z1 < gamma_z2 == gamma_z3");
  }
  TailDependence td;
  td.gamma1 = spec.gamma_z2;
  td.eta = spec.gamma_z1 / spec.gamma_z2;
  if (!(td.eta > 0.5)) throw ArgumentError("closed-form tail constants need eta > 1/2");
  if (spec.variant == ModelVariant::Example1) {
    // U1(t) ~ t^gamma1, so P(Z1 > U1(t/m)) ~ (m/t)^(1/eta).
    td.d = 1.0;
  } else {
    // U1(t) ~ ((1-b) t)^gamma1 and only the (Z1, Z1) branch reaches the joint tail.
    const double b = spec.bernoulli_p;
    td.d = b * std::pow(1.0 - b, -1.0 / td.eta);
  }
  return td;
}

double limit_constant(const ModelSpec& spec) {
  const auto td = tail_dependence(spec);
  return td.d / (1.0 - td.eta * td.gamma1);
}

double asymptotic_sigma2(const ModelSpec& spec) {
  // integral of d min(x,1)^(1/eta) d(x^-gamma1) = -d / (1 - eta gamma1)
  const double stieltjes = -limit_constant(spec);
  return 1.0 / (stieltjes * stieltjes);
}

double limit_ratio(const ModelSpec& spec, double t, const QuadratureSettings& settings) {
  if (!(t > 1.0)) throw ArgumentError("limit ratio requires t > 1");
  const auto td = tail_dependence(spec);
  const double theta = true_theta_p(spec, 1.0 / t, settings);
  const double u1 = marginal_tail_quantile(spec, Margin::X, 1.0 / t);
  return theta / (std::pow(t, 1.0 - 1.0 / td.eta) * u1);
}

}  // namespace mes
