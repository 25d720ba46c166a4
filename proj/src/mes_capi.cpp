#include "mes/mes.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "mes/dataset.hpp"
#include "mes/error.hpp"
#include "mes/estimators.hpp"
#include "mes/evt_core.hpp"
#include "mes/experiments.hpp"
#include "mes/models.hpp"
#include "mes/oracle.hpp"

struct mes_sample {
  mes::PairedSample sample;
};

struct mes_experiment {
  mes::ExperimentResult result;
  std::vector<mes::NormalityDiagnostic> normality;
};

namespace {

thread_local std::string g_last_error;

mes_status map_code(mes::ErrorCode code) {
  switch (code) {
    case mes::ErrorCode::Argument: return MES_ERR_ARGUMENT;
    case mes::ErrorCode::Domain: return MES_ERR_DOMAIN;
    case mes::ErrorCode::Numeric: return MES_ERR_NUMERIC;
    case mes::ErrorCode::Io: return MES_ERR_IO;
    case mes::ErrorCode::MissingColumn: return MES_ERR_MISSING_COLUMN;
    case mes::ErrorCode::NoRows: return MES_ERR_NO_ROWS;
  }
  return MES_ERR_INTERNAL;
}

mes_status fail(mes_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
mes_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const mes::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MES_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MES_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MES_ERR_INTERNAL, "unknown exception");
  }
}

#define MES_REQUIRE(cond, what) \
  if (!(cond)) return fail(MES_ERR_ARGUMENT, what)

mes::ModelSpec to_spec(const mes_model_spec& s) {
  mes::ModelSpec spec;
  if (s.variant == MES_MODEL_EXAMPLE1) {
    spec.variant = mes::ModelVariant::Example1;
  } else if (s.variant == MES_MODEL_EXAMPLE2) {
    spec.variant = mes::ModelVariant::Example2;
  } else {
    throw mes::ArgumentError("unknown model variant");
  }
  spec.gamma_z1 = s.gamma_z1;
  spec.gamma_z2 = s.gamma_z2;
  spec.gamma_z3 = s.gamma_z3;
  spec.bernoulli_p = s.bernoulli_p;
  return spec;
}

mes::QuadratureSettings to_settings(const mes_quadrature_settings* s) {
  mes::QuadratureSettings out;
  if (s != nullptr) {
    out.rel_tol = s->rel_tol;
    out.abs_tol = s->abs_tol;
    out.truncation_quantile = s->truncation_quantile;
    out.max_subdivisions = s->max_subdivisions;
  }
  return out;
}

mes_estimate to_c(const mes::MesEstimate& e) {
  return {e.theta_p, e.theta_kn, e.gamma1_hat, e.eta_hat, e.d_n, e.exponent, e.dn_below_one ? 1 : 0,
          e.eta_clamped ? 1 : 0};
}

mes_bias_summary to_c(const mes::BiasSummary& s) {
  return {s.count, s.bias, s.median, s.q1, s.q3, s.iqr, s.whisker_low, s.whisker_high};
}

}  // namespace

extern "C" {

const char* mes_status_name(mes_status status) {
  switch (status) {
    case MES_OK: return "ok";
    case MES_ERR_ARGUMENT: return "argument error";
    case MES_ERR_DOMAIN: return "domain error";
    case MES_ERR_NUMERIC: return "numeric error";
    case MES_ERR_IO: return "io error";
    case MES_ERR_MISSING_COLUMN: return "missing column";
    case MES_ERR_NO_ROWS: return "no surviving rows";
    case MES_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case MES_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mes_last_error(void) { return g_last_error.c_str(); }

const char* mes_version(void) { return "1.0.0"; }

mes_status mes_sample_create(const double* x, const double* y, size_t n, mes_sample** out) {
  MES_REQUIRE(out != nullptr, "output handle pointer is null");
  MES_REQUIRE(n == 0 || (x != nullptr && y != nullptr), "data pointers are null");
  return guarded([&] {
    mes::PairedSample sample(std::vector<double>(x, x + n), std::vector<double>(y, y + n));
    *out = new mes_sample{std::move(sample)};
    return MES_OK;
  });
}

void mes_sample_destroy(mes_sample* sample) { delete sample; }

size_t mes_sample_size(const mes_sample* sample) { return sample != nullptr ? sample->sample.size() : 0; }

mes_status mes_sample_copy(const mes_sample* sample, double* x, double* y, size_t capacity) {
  MES_REQUIRE(sample != nullptr && x != nullptr && y != nullptr, "null argument");
  if (capacity < sample->sample.size()) return fail(MES_ERR_BUFFER_TOO_SMALL, "buffer smaller than sample");
  std::copy(sample->sample.x().begin(), sample->sample.x().end(), x);
  std::copy(sample->sample.y().begin(), sample->sample.y().end(), y);
  return MES_OK;
}

void mes_csv_options_init(mes_csv_options* options) {
  if (options == nullptr) return;
  *options = mes_csv_options{nullptr, nullptr, nullptr, nullptr, 0, ',', 1};
}

mes_status mes_sample_load_csv(const mes_csv_options* options, mes_sample** out, size_t* rows_read,
                               size_t* dropped) {
  MES_REQUIRE(options != nullptr && out != nullptr, "null argument");
  MES_REQUIRE(options->path != nullptr, "path is null");
  MES_REQUIRE(options->column_x != nullptr && options->column_y != nullptr, "column names are null");
  return guarded([&] {
    mes::DatasetConfig config;
    config.path = options->path;
    config.column_x = options->column_x;
    config.column_y = options->column_y;
    if (options->missing_markers != nullptr) {
      config.missing_markers.assign(options->missing_markers,
                                    options->missing_markers + options->missing_marker_count);
    }
    if (options->delimiter != 0) config.delimiter = options->delimiter;
    config.has_header = options->has_header != 0;
    auto loaded = mes::load_paired_csv(config);
    if (rows_read != nullptr) *rows_read = loaded.rows_read;
    if (dropped != nullptr) *dropped = loaded.dropped;
    *out = new mes_sample{std::move(loaded.sample)};
    return MES_OK;
  });
}

mes_status mes_order_statistic(const double* values, size_t n, size_t j, double* out) {
  MES_REQUIRE(out != nullptr && (values != nullptr || n == 0), "null argument");
  return guarded([&] {
    *out = mes::order_statistic({values, n}, j);
    return MES_OK;
  });
}

mes_status mes_compute_ranks(const double* values, size_t n, size_t* ranks) {
  MES_REQUIRE(ranks != nullptr && (values != nullptr || n == 0), "null argument");
  return guarded([&] {
    const auto r = mes::compute_ranks({values, n});
    std::copy(r.ranks.begin(), r.ranks.end(), ranks);
    return MES_OK;
  });
}

mes_status mes_t_statistics(const mes_sample* sample, double* out, size_t capacity) {
  MES_REQUIRE(sample != nullptr && out != nullptr, "null argument");
  if (capacity < sample->sample.size()) return fail(MES_ERR_BUFFER_TOO_SMALL, "buffer smaller than sample");
  return guarded([&] {
    const auto t = mes::t_statistics(sample->sample);
    std::copy(t.begin(), t.end(), out);
    return MES_OK;
  });
}

mes_status mes_hill_gamma(const double* values, size_t n, size_t k1, double* out) {
  MES_REQUIRE(out != nullptr && (values != nullptr || n == 0), "null argument");
  return guarded([&] {
    *out = mes::hill_gamma({values, n}, k1);
    return MES_OK;
  });
}

mes_status mes_eta_estimate(const mes_sample* sample, size_t k2, double* out) {
  MES_REQUIRE(sample != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::eta_estimate(sample->sample, k2);
    return MES_OK;
  });
}

mes_status mes_theta_kn(const mes_sample* sample, size_t k, double* out) {
  MES_REQUIRE(sample != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::theta_kn(sample->sample, k);
    return MES_OK;
  });
}

mes_status mes_theta_emp(const mes_sample* sample, double p, double* out) {
  MES_REQUIRE(sample != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::theta_emp(sample->sample, p);
    return MES_OK;
  });
}

mes_status mes_theta_p_estimate(const mes_sample* sample, const mes_estimator_config* config, mes_estimate* out) {
  MES_REQUIRE(sample != nullptr && config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = to_c(mes::theta_p_estimate(sample->sample, {config->k, config->k1, config->k2, config->p}));
    return MES_OK;
  });
}

mes_status mes_k_scan(const mes_sample* sample, mes_scan_target target, size_t first, size_t last, size_t step,
                      const mes_estimator_config* fixed, mes_scan_row* rows, size_t capacity, size_t* row_count) {
  MES_REQUIRE(sample != nullptr && row_count != nullptr, "null argument");
  MES_REQUIRE(target != MES_SCAN_THETA_P || fixed != nullptr, "theta_p scan needs a fixed configuration");
  return guarded([&] {
    mes::ScanTarget t;
    switch (target) {
      case MES_SCAN_GAMMA1: t = mes::ScanTarget::Gamma1; break;
      case MES_SCAN_ETA: t = mes::ScanTarget::Eta; break;
      case MES_SCAN_THETA_P: t = mes::ScanTarget::ThetaP; break;
      default: throw mes::ArgumentError("unknown scan target");
    }
    mes::EstimatorConfig config;
    if (fixed != nullptr) config = {fixed->k, fixed->k1, fixed->k2, fixed->p};
    if (step < 1 || first < 1 || first > last) throw mes::ArgumentError("empty k range");
    *row_count = (last - first) / step + 1;
    if (rows == nullptr) return MES_OK;
    if (capacity < *row_count) return fail(MES_ERR_BUFFER_TOO_SMALL, "row buffer too small");
    const auto table = mes::k_scan(sample->sample, t, {first, last, step}, config);
    for (std::size_t i = 0; i < table.size(); ++i) rows[i] = {table[i].k, table[i].estimate};
    return MES_OK;
  });
}

double mes_return_level_probability(const mes_return_level_query* query) {
  if (query == nullptr) return 0.0;
  return mes::ReturnLevelQuery{query->years, query->periods_per_year, query->k, query->k1, query->k2}
      .probability();
}

mes_status mes_return_level(const mes_sample* sample, const mes_return_level_query* query, mes_estimate* out) {
  MES_REQUIRE(sample != nullptr && query != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const mes::ReturnLevelQuery q{query->years, query->periods_per_year, query->k, query->k1, query->k2};
    *out = to_c(mes::return_level_mes(sample->sample, q));
    return MES_OK;
  });
}

void mes_model_spec_init(mes_model_spec* spec, mes_model_variant variant) {
  if (spec == nullptr) return;
  const mes::ModelSpec defaults;
  *spec = {variant, defaults.gamma_z1, defaults.gamma_z2, defaults.gamma_z3, defaults.bernoulli_p};
}

void mes_quadrature_settings_init(mes_quadrature_settings* settings) {
  if (settings == nullptr) return;
  const mes::QuadratureSettings defaults;
  *settings = {defaults.rel_tol, defaults.abs_tol, defaults.truncation_quantile, defaults.max_subdivisions};
}

mes_status mes_sample_pareto(double gamma, double u, double* out) {
  MES_REQUIRE(out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::sample_pareto(gamma, u);
    return MES_OK;
  });
}

mes_status mes_sample_model(const mes_model_spec* spec, size_t n, uint64_t seed, mes_sample** out) {
  MES_REQUIRE(spec != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new mes_sample{mes::sample_model(to_spec(*spec), n, seed)};
    return MES_OK;
  });
}

uint64_t mes_derive_seed(uint64_t master, uint64_t index) { return mes::derive_seed(master, index); }

mes_status mes_oracle_joint_survival(const mes_model_spec* spec, double x, double y, double* out) {
  MES_REQUIRE(spec != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::joint_survival(to_spec(*spec), x, y);
    return MES_OK;
  });
}

mes_status mes_oracle_marginal_quantile(const mes_model_spec* spec, mes_margin margin, double q, double* out) {
  MES_REQUIRE(spec != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::marginal_quantile(to_spec(*spec), margin == MES_MARGIN_X ? mes::Margin::X : mes::Margin::Y, q);
    return MES_OK;
  });
}

mes_status mes_oracle_true_theta(const mes_model_spec* spec, double p, const mes_quadrature_settings* settings,
                                 double* out) {
  MES_REQUIRE(spec != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::true_theta_p(to_spec(*spec), p, to_settings(settings));
    return MES_OK;
  });
}

mes_status mes_oracle_tail_dependence(const mes_model_spec* spec, double* gamma1, double* eta, double* d) {
  MES_REQUIRE(spec != nullptr, "null argument");
  return guarded([&] {
    const auto td = mes::tail_dependence(to_spec(*spec));
    if (gamma1 != nullptr) *gamma1 = td.gamma1;
    if (eta != nullptr) *eta = td.eta;
    if (d != nullptr) *d = td.d;
    return MES_OK;
  });
}

mes_status mes_oracle_limit_constant(const mes_model_spec* spec, double* out) {
  MES_REQUIRE(spec != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::limit_constant(to_spec(*spec));
    return MES_OK;
  });
}

mes_status mes_oracle_sigma2(const mes_model_spec* spec, double* out) {
  MES_REQUIRE(spec != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::asymptotic_sigma2(to_spec(*spec));
    return MES_OK;
  });
}

mes_status mes_oracle_limit_ratio(const mes_model_spec* spec, double t, const mes_quadrature_settings* settings,
                                  double* out) {
  MES_REQUIRE(spec != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = mes::limit_ratio(to_spec(*spec), t, to_settings(settings));
    return MES_OK;
  });
}

void mes_simulation_config_init(mes_simulation_config* config) {
  if (config == nullptr) return;
  const mes::SimulationConfig defaults;
  mes_simulation_config c{};
  mes_model_spec_init(&c.model, MES_MODEL_EXAMPLE1);
  c.n = defaults.n;
  c.replicates = defaults.replicates;
  c.k = defaults.estimator.k;
  c.k1 = defaults.estimator.k1;
  c.k2 = defaults.estimator.k2;
  c.master_seed = defaults.master_seed;
  c.include_empirical = defaults.include_empirical ? 1 : 0;
  c.threads = defaults.threads;
  *config = c;
}

mes_status mes_simulate(const mes_simulation_config* config, mes_experiment** out) {
  MES_REQUIRE(config != nullptr && out != nullptr, "null argument");
  MES_REQUIRE(config->probabilities != nullptr || config->probability_count == 0, "probabilities pointer is null");
  return guarded([&] {
    mes::SimulationConfig sc;
    sc.spec = to_spec(config->model);
    sc.n = config->n;
    sc.replicates = config->replicates;
    if (config->probabilities != nullptr) {
      sc.probabilities.assign(config->probabilities, config->probabilities + config->probability_count);
    }
    sc.estimator = {config->k, config->k1, config->k2, 0.0};
    sc.master_seed = config->master_seed;
    sc.include_empirical = config->include_empirical != 0;
    sc.threads = config->threads;
    auto experiment = std::make_unique<mes_experiment>();
    experiment->result = mes::run_simulation(sc);
    try {
      experiment->normality = mes::normality_diagnostic(experiment->result, sc.spec, sc);
    } catch (const mes::ArgumentError&) {
      // No closed-form tail constants for this parametrisation.
      experiment->normality.clear();
    }
    *out = experiment.release();
    return MES_OK;
  });
}

void mes_experiment_destroy(mes_experiment* experiment) { delete experiment; }

size_t mes_experiment_cell_count(const mes_experiment* experiment) {
  return experiment != nullptr ? experiment->result.cells.size() : 0;
}

mes_status mes_experiment_cell(const mes_experiment* experiment, size_t index, mes_cell_info* out) {
  MES_REQUIRE(experiment != nullptr && out != nullptr, "null argument");
  MES_REQUIRE(index < experiment->result.cells.size(), "cell index out of range");
  const auto& cell = experiment->result.cells[index];
  out->estimator = cell.estimator == mes::EstimatorKind::Extrapolated ? MES_ESTIMATOR_THETA_P : MES_ESTIMATOR_THETA_EMP;
  out->p = cell.p;
  out->true_theta = cell.true_theta;
  out->available = cell.available ? 1 : 0;
  out->note = cell.note.c_str();
  out->summary = to_c(cell.summary);
  return MES_OK;
}

mes_status mes_experiment_errors(const mes_experiment* experiment, size_t index, double* errors, size_t capacity,
                                 size_t* length) {
  MES_REQUIRE(experiment != nullptr && length != nullptr, "null argument");
  MES_REQUIRE(index < experiment->result.cells.size(), "cell index out of range");
  const auto& cell = experiment->result.cells[index];
  *length = cell.errors.size();
  if (errors == nullptr) return MES_OK;
  if (capacity < cell.errors.size()) return fail(MES_ERR_BUFFER_TOO_SMALL, "error buffer too small");
  std::copy(cell.errors.begin(), cell.errors.end(), errors);
  return MES_OK;
}

size_t mes_experiment_normality_count(const mes_experiment* experiment) {
  return experiment != nullptr ? experiment->normality.size() : 0;
}

mes_status mes_experiment_normality(const mes_experiment* experiment, size_t index, mes_normality* out) {
  MES_REQUIRE(experiment != nullptr && out != nullptr, "null argument");
  MES_REQUIRE(index < experiment->normality.size(), "diagnostic index out of range");
  const auto& d = experiment->normality[index];
  *out = {d.p, d.d_n, d.rate, d.variance, d.sigma2, d.ratio, d.count};
  return MES_OK;
}

mes_status mes_bias_summary_compute(const double* errors, size_t n, mes_bias_summary* out) {
  MES_REQUIRE(out != nullptr && (errors != nullptr || n == 0), "null argument");
  return guarded([&] {
    *out = to_c(mes::bias_summary({errors, n}));
    return MES_OK;
  });
}

}  // extern "C"
