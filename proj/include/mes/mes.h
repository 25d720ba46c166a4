/*
 * C interface to the marginal expected shortfall library.
 *
 * Every function returns a mes_status. On failure the message is available
 * from mes_last_error() on the calling thread until the next failing call.
 * Handles are opaque and released with the matching destroy function.
 */
#ifndef MES_MES_H
#define MES_MES_H

#include <stddef.h>
#include <stdint.h>

#if defined(MES_BUILDING_LIBRARY)
#define MES_API __attribute__((visibility("default")))
#else
#define MES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mes_status {
  MES_OK = 0,
  MES_ERR_ARGUMENT = 1,
  MES_ERR_DOMAIN = 2,
  MES_ERR_NUMERIC = 3,
  MES_ERR_IO = 4,
  MES_ERR_MISSING_COLUMN = 5,
  MES_ERR_NO_ROWS = 6,
  MES_ERR_BUFFER_TOO_SMALL = 7,
  MES_ERR_INTERNAL = 8
} mes_status;

MES_API const char* mes_status_name(mes_status status);
MES_API const char* mes_last_error(void);
MES_API const char* mes_version(void);

/* ---- paired samples ---------------------------------------------------- */

typedef struct mes_sample mes_sample;

MES_API mes_status mes_sample_create(const double* x, const double* y, size_t n, mes_sample** out);
MES_API void mes_sample_destroy(mes_sample* sample);
MES_API size_t mes_sample_size(const mes_sample* sample);
/* Copies the observations into caller buffers of at least mes_sample_size() entries. */
MES_API mes_status mes_sample_copy(const mes_sample* sample, double* x, double* y, size_t capacity);

typedef struct mes_csv_options {
  const char* path;
  const char* column_x; /* header name, or 0-based index */
  const char* column_y;
  const char* const* missing_markers; /* NULL: {"", "NA", "-"} */
  size_t missing_marker_count;
  char delimiter; /* 0: ',' */
  int has_header; /* nonzero: first line is a header */
} mes_csv_options;

MES_API void mes_csv_options_init(mes_csv_options* options);
/* rows_read and dropped may be NULL. */
MES_API mes_status mes_sample_load_csv(const mes_csv_options* options, mes_sample** out, size_t* rows_read,
                                       size_t* dropped);

/* ---- estimators -------------------------------------------------------- */

typedef struct mes_estimator_config {
  size_t k;
  size_t k1;
  size_t k2;
  double p;
} mes_estimator_config;

typedef struct mes_estimate {
  double theta_p;
  double theta_kn;
  double gamma1_hat;
  double eta_hat;
  double d_n;
  double exponent;
  int dn_below_one; /* extrapolation ratio k/(np) < 1: asymptotic guarantee does not apply */
  int eta_clamped;
} mes_estimate;

MES_API mes_status mes_order_statistic(const double* values, size_t n, size_t j, double* out);
/* ranks receives n 1-based ranks; ties broken by index. */
MES_API mes_status mes_compute_ranks(const double* values, size_t n, size_t* ranks);
MES_API mes_status mes_t_statistics(const mes_sample* sample, double* out, size_t capacity);

MES_API mes_status mes_hill_gamma(const double* values, size_t n, size_t k1, double* out);
MES_API mes_status mes_eta_estimate(const mes_sample* sample, size_t k2, double* out);
MES_API mes_status mes_theta_kn(const mes_sample* sample, size_t k, double* out);
MES_API mes_status mes_theta_emp(const mes_sample* sample, double p, double* out);
MES_API mes_status mes_theta_p_estimate(const mes_sample* sample, const mes_estimator_config* config,
                                        mes_estimate* out);

typedef enum mes_scan_target { MES_SCAN_GAMMA1 = 0, MES_SCAN_ETA = 1, MES_SCAN_THETA_P = 2 } mes_scan_target;

typedef struct mes_scan_row {
  size_t k;
  double estimate;
} mes_scan_row;

/* Scans k = first, first+step, ..., <= last. Rows are written to `rows`
 * (capacity entries); *row_count receives the number of rows needed. With
 * rows == NULL only the count is returned. */
MES_API mes_status mes_k_scan(const mes_sample* sample, mes_scan_target target, size_t first, size_t last,
                              size_t step, const mes_estimator_config* fixed, mes_scan_row* rows,
                              size_t capacity, size_t* row_count);

typedef struct mes_return_level_query {
  size_t years;
  size_t periods_per_year;
  size_t k;
  size_t k1;
  size_t k2;
} mes_return_level_query;

MES_API double mes_return_level_probability(const mes_return_level_query* query);
MES_API mes_status mes_return_level(const mes_sample* sample, const mes_return_level_query* query,
                                    mes_estimate* out);

/* ---- simulation models and oracle -------------------------------------- */

typedef enum mes_model_variant { MES_MODEL_EXAMPLE1 = 1, MES_MODEL_EXAMPLE2 = 2 } mes_model_variant;
typedef enum mes_margin { MES_MARGIN_X = 0, MES_MARGIN_Y = 1 } mes_margin;

typedef struct mes_model_spec {
  mes_model_variant variant;
  double gamma_z1;
  double gamma_z2;
  double gamma_z3;
  double bernoulli_p;
} mes_model_spec;

typedef struct mes_quadrature_settings {
  double rel_tol;
  double abs_tol;
  double truncation_quantile;
  size_t max_subdivisions;
} mes_quadrature_settings;

MES_API void mes_model_spec_init(mes_model_spec* spec, mes_model_variant variant);
MES_API void mes_quadrature_settings_init(mes_quadrature_settings* settings);

MES_API mes_status mes_sample_pareto(double gamma, double u, double* out);
MES_API mes_status mes_sample_model(const mes_model_spec* spec, size_t n, uint64_t seed, mes_sample** out);
MES_API uint64_t mes_derive_seed(uint64_t master, uint64_t index);

MES_API mes_status mes_oracle_joint_survival(const mes_model_spec* spec, double x, double y, double* out);
MES_API mes_status mes_oracle_marginal_quantile(const mes_model_spec* spec, mes_margin margin, double q,
                                                double* out);
/* settings may be NULL for defaults. */
MES_API mes_status mes_oracle_true_theta(const mes_model_spec* spec, double p,
                                         const mes_quadrature_settings* settings, double* out);
MES_API mes_status mes_oracle_tail_dependence(const mes_model_spec* spec, double* gamma1, double* eta, double* d);
MES_API mes_status mes_oracle_limit_constant(const mes_model_spec* spec, double* out);
MES_API mes_status mes_oracle_sigma2(const mes_model_spec* spec, double* out);
MES_API mes_status mes_oracle_limit_ratio(const mes_model_spec* spec, double t,
                                          const mes_quadrature_settings* settings, double* out);

/* ---- Monte Carlo experiments ------------------------------------------- */

typedef struct mes_simulation_config {
  mes_model_spec model;
  size_t n;
  size_t replicates;
  const double* probabilities; /* NULL: {10/n, 1/n, 1/(10n)} */
  size_t probability_count;
  size_t k;
  size_t k1;
  size_t k2;
  uint64_t master_seed;
  int include_empirical;
  unsigned threads; /* 0: hardware concurrency */
} mes_simulation_config;

typedef enum mes_estimator_kind { MES_ESTIMATOR_THETA_P = 0, MES_ESTIMATOR_THETA_EMP = 1 } mes_estimator_kind;

typedef struct mes_bias_summary {
  size_t count;
  double bias;
  double median;
  double q1;
  double q3;
  double iqr;
  double whisker_low;
  double whisker_high;
} mes_bias_summary;

typedef struct mes_cell_info {
  mes_estimator_kind estimator;
  double p;
  double true_theta;
  int available;
  const char* note; /* valid while the experiment handle lives */
  mes_bias_summary summary;
} mes_cell_info;

typedef struct mes_normality {
  double p;
  double d_n;
  double rate;
  double variance;
  double sigma2;
  double ratio;
  size_t count;
} mes_normality;

typedef struct mes_experiment mes_experiment;

MES_API void mes_simulation_config_init(mes_simulation_config* config);
MES_API mes_status mes_simulate(const mes_simulation_config* config, mes_experiment** out);
MES_API void mes_experiment_destroy(mes_experiment* experiment);
MES_API size_t mes_experiment_cell_count(const mes_experiment* experiment);
MES_API mes_status mes_experiment_cell(const mes_experiment* experiment, size_t index, mes_cell_info* out);
/* Copies the relative errors of a cell; *length receives the number available. */
MES_API mes_status mes_experiment_errors(const mes_experiment* experiment, size_t index, double* errors,
                                         size_t capacity, size_t* length);
MES_API size_t mes_experiment_normality_count(const mes_experiment* experiment);
MES_API mes_status mes_experiment_normality(const mes_experiment* experiment, size_t index, mes_normality* out);

MES_API mes_status mes_bias_summary_compute(const double* errors, size_t n, mes_bias_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* MES_MES_H */
