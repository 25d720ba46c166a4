#include "mes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "mes/error.hpp"

namespace mes {

namespace {

double interpolated_quantile(const std::vector<double>& sorted, double level) {
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

const char* to_string(EstimatorKind kind) noexcept {
  switch (kind) {
    case EstimatorKind::Extrapolated: return "theta_p";
    case EstimatorKind::Empirical: return "theta_emp";
  }
  return "unknown";
}

std::vector<double> SimulationConfig::effective_probabilities() const {
  if (!probabilities.empty()) return probabilities;
  const double nd = static_cast<double>(n);
  return {10.0 / nd, 1.0 / nd, 1.0 / (10.0 * nd)};
}

void SimulationConfig::validate() const {
  spec.validate();
  if (replicates < 1) throw ArgumentError("number of replicates must be at least 1");
  if (n < 2) throw ArgumentError("sample size must be at least 2");
  for (double p : effective_probabilities()) {
    EstimatorConfig c = estimator;
    c.p = p;
    c.validate(n);
  }
}

BiasSummary bias_summary(std::span<const double> errors) {
  if (errors.empty()) throw ArgumentError("bias summary of an empty error vector");
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  BiasSummary s;
  s.count = sorted.size();
  s.bias = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
  s.median = interpolated_quantile(sorted, 0.5);
  s.q1 = interpolated_quantile(sorted, 0.25);
  s.q3 = interpolated_quantile(sorted, 0.75);
  s.iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * s.iqr;
  const double high_fence = s.q3 + 1.5 * s.iqr;
  s.whisker_low = *std::find_if(sorted.begin(), sorted.end(), [&](double v) { return v >= low_fence; });
  s.whisker_high = *std::find_if(sorted.rbegin(), sorted.rend(), [&](double v) { return v <= high_fence; });
  return s;
}

const ExperimentCell* ExperimentResult::find(EstimatorKind estimator, double p) const {
  for (const auto& cell : cells) {
    if (cell.estimator == estimator && cell.p == p) return &cell;
  }
  return nullptr;
}

std::vector<CellLayout> cell_layout(const SimulationConfig& config) {
  std::vector<CellLayout> layout;
  for (double p : config.effective_probabilities()) {
    layout.push_back({EstimatorKind::Extrapolated, p});
    if (config.include_empirical) layout.push_back({EstimatorKind::Empirical, p});
  }
  return layout;
}

std::vector<double> true_thetas(const SimulationConfig& config) {
  std::vector<double> truths;
  for (const auto& cell : cell_layout(config)) {
    // Both estimators of one p share the same oracle value.
    if (!truths.empty() && cell.estimator == EstimatorKind::Empirical) {
      truths.push_back(truths.back());
    } else {
      truths.push_back(true_theta_p(config.spec, cell.p, config.quadrature));
    }
  }
  return truths;
}

std::vector<double> run_replicate(const SimulationConfig& config, std::span<const double> truths,
                                  std::size_t index) {
  const auto layout = cell_layout(config);
  if (truths.size() != layout.size()) throw ArgumentError("oracle values do not match the cell layout");
  const auto sample = sample_model(config.spec, config.n, derive_seed(config.master_seed, index));
  const auto& ec = config.estimator;
  const auto ingredients = estimate_ingredients(sample, ec.k, ec.k1, ec.k2);

  std::vector<double> errors(layout.size());
  for (std::size_t c = 0; c < layout.size(); ++c) {
    double estimate;
    if (layout[c].estimator == EstimatorKind::Extrapolated) {
      estimate = extrapolate(ingredients, layout[c].p).theta_p;
    } else if (empirical_k(config.n, layout[c].p) >= 1) {
      estimate = theta_emp(sample, layout[c].p);
    } else {
      estimate = std::numeric_limits<double>::quiet_NaN();
    }
    errors[c] = estimate / truths[c] - 1.0;
  }
  return errors;
}

ExperimentResult aggregate(const SimulationConfig& config, std::span<const double> truths,
                           const std::vector<std::vector<double>>& rows) {
  const auto layout = cell_layout(config);
  ExperimentResult result;
  for (std::size_t c = 0; c < layout.size(); ++c) {
    ExperimentCell cell;
    cell.estimator = layout[c].estimator;
    cell.p = layout[c].p;
    cell.true_theta = truths[c];
    if (cell.estimator == EstimatorKind::Empirical && empirical_k(config.n, cell.p) < 1) {
      cell.available = false;
      cell.note = "empirical estimator not applicable: round(n p) < 1";
    } else {
      cell.errors.reserve(rows.size());
      for (const auto& row : rows) cell.errors.push_back(row.at(c));
      cell.summary = bias_summary(cell.errors);
    }
    result.cells.push_back(std::move(cell));
  }
  return result;
}

ExperimentResult run_simulation(const SimulationConfig& config) {
  config.validate();
  const auto truths = true_thetas(config);

  std::vector<std::vector<double>> rows(config.replicates);
  unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.replicates));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < config.replicates; i = next++) {
      try {
        rows[i] = run_replicate(config, truths, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.replicates;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(config, truths, rows);
}

std::vector<NormalityDiagnostic> normality_diagnostic(const ExperimentResult& result, const ModelSpec& spec,
                                                      const SimulationConfig& config) {
  const auto td = tail_dependence(spec);
  const double sigma2 = asymptotic_sigma2(spec);
  const double n = static_cast<double>(config.n);
  const double k = static_cast<double>(config.estimator.k);
  const double rate = std::sqrt(k) * std::pow(n / k, 0.5 - 0.5 / td.eta);

  std::vector<NormalityDiagnostic> out;
  for (const auto& cell : result.cells) {
    if (cell.estimator != EstimatorKind::Extrapolated || !cell.available || cell.errors.empty()) continue;
    NormalityDiagnostic diag;
    diag.p = cell.p;
    diag.d_n = k / (n * cell.p);
    diag.rate = rate;
    diag.sigma2 = sigma2;
    diag.count = cell.errors.size();
    if (cell.errors.size() > 1) {
      double mean = 0.0;
      for (double e : cell.errors) mean += rate * e;
      mean /= static_cast<double>(cell.errors.size());
      double ss = 0.0;
      for (double e : cell.errors) ss += (rate * e - mean) * (rate * e - mean);
      diag.variance = ss / static_cast<double>(cell.errors.size() - 1);
    }
    diag.ratio = diag.variance / sigma2;
    out.push_back(diag);
  }
  return out;
}

}  // namespace mes
