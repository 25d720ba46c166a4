#pragma once

// Monte Carlo harness: replicated estimation on the simulation models,
// relative-error summaries and the normality diagnostic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mes/estimators.hpp"
#include "mes/models.hpp"
#include "mes/oracle.hpp"

namespace mes {

enum class EstimatorKind {
  Extrapolated,  // theta_p_estimate
  Empirical,     // theta_emp
};

const char* to_string(EstimatorKind kind) noexcept;

struct SimulationConfig {
  ModelSpec spec;
  std::size_t n = 5000;
  std::size_t replicates = 100;
  std::vector<double> probabilities;  // empty: {10/n, 1/n, 1/(10n)}
  EstimatorConfig estimator;          // p is ignored, taken from `probabilities`
  std::uint64_t master_seed = 0;
  bool include_empirical = true;
  unsigned threads = 0;  // 0: hardware concurrency
  QuadratureSettings quadrature;

  std::vector<double> effective_probabilities() const;
  void validate() const;
};

/// Boxplot numbers: quartiles use linear interpolation between order
/// statistics, whiskers are the extreme data points inside 1.5 IQR fences.
struct BiasSummary {
  std::size_t count = 0;
  double bias = 0.0;  // mean relative error
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
};

BiasSummary bias_summary(std::span<const double> errors);

struct ExperimentCell {
  EstimatorKind estimator = EstimatorKind::Extrapolated;
  double p = 0.0;
  double true_theta = 0.0;
  bool available = true;
  std::string note;            // reason when unavailable
  std::vector<double> errors;  // theta_hat / theta - 1, one per replicate, in replicate order
  BiasSummary summary;
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;

  const ExperimentCell* find(EstimatorKind estimator, double p) const;
};

/// Cell layout shared by run_replicate and aggregate: for each probability,
/// the extrapolated cell followed by the empirical cell when enabled.
struct CellLayout {
  EstimatorKind estimator;
  double p;
};
std::vector<CellLayout> cell_layout(const SimulationConfig& config);

/// Oracle values, one per cell of cell_layout.
std::vector<double> true_thetas(const SimulationConfig& config);

/// Relative errors of replicate `index`, one per cell (NaN for an unavailable
/// empirical cell). Depends only on (config, index).
std::vector<double> run_replicate(const SimulationConfig& config, std::span<const double> truths,
                                  std::size_t index);

/// Builds the result from per-replicate rows ordered by replicate index.
ExperimentResult aggregate(const SimulationConfig& config, std::span<const double> truths,
                           const std::vector<std::vector<double>>& rows);

ExperimentResult run_simulation(const SimulationConfig& config);

struct NormalityDiagnostic {
  double p = 0.0;
  double d_n = 0.0;
  double rate = 0.0;  // sqrt(k) (n/k)^(1/2 - 1/(2 eta)) with the model's true eta
  double variance = 0.0;
  double sigma2 = 0.0;
  double ratio = 0.0;  // variance / sigma2
  std::size_t count = 0;
};

/// One diagnostic per available extrapolated cell.
std::vector<NormalityDiagnostic> normality_diagnostic(const ExperimentResult& result, const ModelSpec& spec,
                                                      const SimulationConfig& config);

}  // namespace mes
