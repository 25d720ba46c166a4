#pragma once

#include <cstddef>
#include <span>

#include "mes/evt_core.hpp"

namespace mes {

/// Lower bound applied to the tail dependence estimate so that 1/eta stays finite.
inline constexpr double kDefaultEtaFloor = 1e-6;

/// Intermediate sequences and target probability.
///   k  - number of y-exceedances used for the within-sample tail MES
///   k1 - top order statistics used by the Hill estimator of the x tail index
///   k2 - top order statistics used by the tail dependence estimator
struct EstimatorConfig {
  std::size_t k = 200;
  std::size_t k1 = 200;
  std::size_t k2 = 200;
  double p = 0.0;

  /// Throws ArgumentError unless 1 <= k, k1, k2 < n and 0 < p < 1.
  void validate(std::size_t n) const;
};

/// The ingredients of the extrapolated estimator that do not depend on p.
struct TailIngredients {
  std::size_t n = 0;
  std::size_t k = 0;
  double theta_kn = 0.0;
  double gamma1_hat = 0.0;
  double eta_hat = 0.0;
  double eta_raw = 0.0;  // before clamping into [floor, 1]
};

struct MesEstimate {
  double theta_p = 0.0;
  double theta_kn = 0.0;
  double gamma1_hat = 0.0;
  double eta_hat = 0.0;
  double d_n = 0.0;       // k / (n p)
  double exponent = 0.0;  // -1/eta_hat + 1 + gamma1_hat
  bool dn_below_one = false;
  bool eta_clamped = false;
};

/// Hill estimator on the k1 largest values. Only the top k1+1 order
/// statistics enter the formula and they must be strictly positive.
double hill_gamma(std::span<const double> values, std::size_t k1);

/// Hill statistic on the T statistics, unclamped.
double eta_estimate_raw(const PairedSample& sample, std::size_t k2);

/// Tail dependence coefficient estimate clamped into [floor, 1].
double eta_estimate(const PairedSample& sample, std::size_t k2, double floor = kDefaultEtaFloor);

/// (1/k) * sum of x_i over pairs with y_i strictly above Y_{n-k,n}.
double theta_kn(const PairedSample& sample, std::size_t k);

/// round-half-up(n p); the k used by the empirical estimator.
std::size_t empirical_k(std::size_t n, double p);

/// theta_kn with k = round(n p). Throws DomainError when round(n p) < 1.
double theta_emp(const PairedSample& sample, double p);

TailIngredients estimate_ingredients(const PairedSample& sample, std::size_t k, std::size_t k1,
                                     std::size_t k2, double eta_floor = kDefaultEtaFloor);

/// Extrapolates the ingredients from level k/n to level p.
MesEstimate extrapolate(const TailIngredients& ingredients, double p);

MesEstimate theta_p_estimate(const PairedSample& sample, const EstimatorConfig& config);

}  // namespace mes
