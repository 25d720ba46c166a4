#include "mes/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mes/error.hpp"

namespace mes {

namespace {

void require_top_count(std::size_t count, std::size_t n, const char* name) {
  if (count < 1 || count >= n) {
    throw ArgumentError(std::string(name) + "=" + std::to_string(count) + " must lie in 1.." +
                        std::to_string(n == 0 ? 0 : n - 1));
  }
}

// Mean log-excess of the `top` largest values over the (n-top)-th smallest.
// `work` is reordered.
double log_excess_mean(std::vector<double>& work, std::size_t top) {
  const std::size_t n = work.size();
  auto threshold_it = work.begin() + static_cast<std::ptrdiff_t>(n - top - 1);
  std::nth_element(work.begin(), threshold_it, work.end());
  const double threshold = *threshold_it;
  if (!(threshold > 0.0)) {
    throw DomainError("Hill estimator requires positive top order statistics; X_{n-k,n}=" +
                      std::to_string(threshold));
  }
  const double log_threshold = std::log(threshold);
  double sum = 0.0;
  for (auto it = threshold_it + 1; it != work.end(); ++it) sum += std::log(*it) - log_threshold;
  return sum / static_cast<double>(top);
}

}  // namespace

void EstimatorConfig::validate(std::size_t n) const {
  require_top_count(k, n, "k");
  require_top_count(k1, n, "k1");
  require_top_count(k2, n, "k2");
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("p=" + std::to_string(p) + " must lie in (0,1)");
}

double hill_gamma(std::span<const double> values, std::size_t k1) {
  require_top_count(k1, values.size(), "k1");
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("Hill estimator input contains a non-finite value");
  }
  std::vector<double> work(values.begin(), values.end());
  return log_excess_mean(work, k1);
}

double eta_estimate_raw(const PairedSample& sample, std::size_t k2) {
  require_top_count(k2, sample.size(), "k2");
  auto t = t_statistics(sample);
  return log_excess_mean(t, k2);
}

double eta_estimate(const PairedSample& sample, std::size_t k2, double floor) {
  if (!(floor > 0.0 && floor <= 1.0)) throw ArgumentError("eta floor must lie in (0,1]");
  return std::clamp(eta_estimate_raw(sample, k2), floor, 1.0);
}

double theta_kn(const PairedSample& sample, std::size_t k) {
  const std::size_t n = sample.size();
  require_top_count(k, n, "k");
  const double threshold = order_statistic(sample.y(), n - k);
  const auto x = sample.x();
  const auto y = sample.y();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] > threshold) sum += x[i];
  }
  return sum / static_cast<double>(k);
}

std::size_t empirical_k(std::size_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("p=" + std::to_string(p) + " must lie in (0,1)");
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * p + 0.5));
}

double theta_emp(const PairedSample& sample, double p) {
  const std::size_t k = empirical_k(sample.size(), p);
  if (k < 1) throw DomainError("p too small for empirical estimator (round(n p) = 0)");
  return theta_kn(sample, k);
}

TailIngredients estimate_ingredients(const PairedSample& sample, std::size_t k, std::size_t k1,
                                     std::size_t k2, double eta_floor) {
  TailIngredients out;
  out.n = sample.size();
  out.k = k;
  out.theta_kn = theta_kn(sample, k);
  out.gamma1_hat = hill_gamma(sample.x(), k1);
  out.eta_raw = eta_estimate_raw(sample, k2);
  out.eta_hat = std::clamp(out.eta_raw, eta_floor, 1.0);
  return out;
}

MesEstimate extrapolate(const TailIngredients& ingredients, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("p=" + std::to_string(p) + " must lie in (0,1)");
  MesEstimate est;
  est.theta_kn = ingredients.theta_kn;
  est.gamma1_hat = ingredients.gamma1_hat;
  est.eta_hat = ingredients.eta_hat;
  est.eta_clamped = ingredients.eta_hat != ingredients.eta_raw;
  est.d_n = static_cast<double>(ingredients.k) / (static_cast<double>(ingredients.n) * p);
  est.exponent = -1.0 / est.eta_hat + 1.0 + est.gamma1_hat;
  est.theta_p = est.theta_kn * std::pow(est.d_n, est.exponent);
  est.dn_below_one = est.d_n < 1.0;
  return est;
}

MesEstimate theta_p_estimate(const PairedSample& sample, const EstimatorConfig& config) {
  config.validate(sample.size());
  return extrapolate(estimate_ingredients(sample, config.k, config.k1, config.k2), config.p);
}

}  // namespace mes
