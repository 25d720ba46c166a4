// Command-line front end. Talks to the library exclusively through mes/mes.h.
//
//   mes_cli estimate     <csv> --x-col X --y-col Y --p P [--k --k1 --k2]
//   mes_cli scan         <csv> --x-col X --y-col Y --target {gamma1,eta,theta_p} --k-min --k-max
//   mes_cli return-level <csv> --x-col X --y-col Y --M 50 --M 100 [--k 50]
//   mes_cli simulate     --model example1 --replicates 100 --seed 1
//   mes_cli oracle       --model example1 [--p ...] [--t ...]
//
// Tables go to stdout (tab separated); --out writes a JSON document.
// Exit codes: 0 ok, 2 argument error, 3 data error, 4 numeric error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mes/mes.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitArgument = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CliFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(mes_status status) {
  switch (status) {
    case MES_OK: return kExitOk;
    case MES_ERR_ARGUMENT:
    case MES_ERR_BUFFER_TOO_SMALL: return kExitArgument;
    case MES_ERR_DOMAIN:
    case MES_ERR_IO:
    case MES_ERR_MISSING_COLUMN:
    case MES_ERR_NO_ROWS: return kExitData;
    case MES_ERR_NUMERIC: return kExitNumeric;
    case MES_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(mes_status status) {
  if (status != MES_OK) {
    throw CliFailure{exit_code_for(status), std::string(mes_status_name(status)) + ": " + mes_last_error()};
  }
}

struct SampleDeleter {
  void operator()(mes_sample* s) const { mes_sample_destroy(s); }
};
struct ExperimentDeleter {
  void operator()(mes_experiment* e) const { mes_experiment_destroy(e); }
};
using SamplePtr = std::unique_ptr<mes_sample, SampleDeleter>;
using ExperimentPtr = std::unique_ptr<mes_experiment, ExperimentDeleter>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct DataOptions {
  std::string path;
  std::string x_col;
  std::string y_col;
  std::vector<std::string> missing;
  bool missing_given = false;
  char delimiter = ',';
  bool no_header = false;

  void add_to(CLI::App* app) {
    app->add_option("input", path, "Delimited text file with paired observations")->required();
    app->add_option("--x-col", x_col, "Column of X (header name or 0-based index)")->required();
    app->add_option("--y-col", y_col, "Column of Y (header name or 0-based index)")->required();
    app->add_option("--missing", missing, "Missing-value tokens (default: empty, NA, -)")
        ->each([this](const std::string&) { missing_given = true; });
    app->add_option("--delimiter", delimiter, "Field delimiter");
    app->add_flag("--no-header", no_header, "First line is data, columns are addressed by index");
  }

  struct Loaded {
    SamplePtr sample;
    size_t rows_read = 0;
    size_t dropped = 0;
  };

  Loaded load() const {
    std::vector<const char*> markers;
    for (const auto& m : missing) markers.push_back(m.c_str());
    mes_csv_options options;
    mes_csv_options_init(&options);
    options.path = path.c_str();
    options.column_x = x_col.c_str();
    options.column_y = y_col.c_str();
    if (missing_given) {
      options.missing_markers = markers.data();
      options.missing_marker_count = markers.size();
    }
    options.delimiter = delimiter;
    options.has_header = no_header ? 0 : 1;
    mes_sample* raw = nullptr;
    Loaded out;
    check(mes_sample_load_csv(&options, &raw, &out.rows_read, &out.dropped));
    out.sample.reset(raw);
    return out;
  }

  Json describe(const Loaded& loaded) const {
    Json j;
    j["path"] = path;
    j["x_column"] = x_col;
    j["y_column"] = y_col;
    j["rows_read"] = loaded.rows_read;
    j["rows_dropped"] = loaded.dropped;
    j["n"] = mes_sample_size(loaded.sample.get());
    return j;
  }
};

Json estimate_json(const mes_estimate& e) {
  Json j;
  j["theta_p"] = e.theta_p;
  j["theta_kn"] = e.theta_kn;
  j["gamma1_hat"] = e.gamma1_hat;
  j["eta_hat"] = e.eta_hat;
  j["d_n"] = e.d_n;
  j["exponent"] = e.exponent;
  return j;
}

void collect_warnings(const mes_estimate& e, const std::string& context, Json& warnings) {
  if (e.dn_below_one) {
    warnings.push_back(context + "d_n = k/(np) = " + fmt(e.d_n) +
                       " < 1; the extrapolation runs downwards and the asymptotic normality result does not apply");
  }
  if (e.eta_clamped) warnings.push_back(context + "raw eta estimate outside (0,1] was clamped");
}

void print_warnings(const Json& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << '\n';
}

void write_document(const std::string& out_path, const Json& doc) {
  if (out_path.empty()) return;
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliFailure{kExitData, "cannot write '" + out_path + "'"};
  out << doc.dump(2) << '\n';
  if (!out) throw CliFailure{kExitData, "write failed for '" + out_path + "'"};
}

mes_model_spec model_from_name(const std::string& name) {
  mes_model_spec spec;
  mes_model_spec_init(&spec, name == "example2" ? MES_MODEL_EXAMPLE2 : MES_MODEL_EXAMPLE1);
  return spec;
}

Json model_json(const std::string& name, const mes_model_spec& spec) {
  Json j;
  j["name"] = name;
  j["gamma_z1"] = spec.gamma_z1;
  j["gamma_z2"] = spec.gamma_z2;
  j["gamma_z3"] = spec.gamma_z3;
  if (spec.variant == MES_MODEL_EXAMPLE2) j["bernoulli_p"] = spec.bernoulli_p;
  return j;
}

const char* estimator_name(mes_estimator_kind kind) {
  return kind == MES_ESTIMATOR_THETA_P ? "theta_p" : "theta_emp";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marginal expected shortfall estimation under asymptotic independence"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "Write a JSON summary document to this path");

  // estimate
  DataOptions est_data;
  size_t est_k = 200, est_k1 = 200, est_k2 = 200;
  double est_p = 0.0;
  auto* estimate = app.add_subcommand("estimate", "Extrapolated MES estimate from a data file");
  est_data.add_to(estimate);
  estimate->add_option("--k", est_k, "Y-exceedances for the within-sample estimate")->capture_default_str();
  estimate->add_option("--k1", est_k1, "Top order statistics for the Hill estimator")->capture_default_str();
  estimate->add_option("--k2", est_k2, "Top order statistics for the eta estimator")->capture_default_str();
  estimate->add_option("--p", est_p, "Target exceedance probability")->required();

  // scan
  DataOptions scan_data;
  std::string scan_target = "theta_p";
  size_t scan_first = 10, scan_last = 500, scan_step = 10;
  size_t scan_k1 = 200, scan_k2 = 200;
  double scan_p = 0.0;
  size_t scan_years = 0, scan_periods = 365;
  auto* scan = app.add_subcommand("scan", "Estimates over a range of k (stability plots)");
  scan_data.add_to(scan);
  scan->add_option("--target", scan_target, "gamma1, eta or theta_p")
      ->check(CLI::IsMember({"gamma1", "eta", "theta_p"}))
      ->capture_default_str();
  scan->add_option("--k-min", scan_first)->capture_default_str();
  scan->add_option("--k-max", scan_last)->capture_default_str();
  scan->add_option("--k-step", scan_step)->capture_default_str();
  scan->add_option("--k1", scan_k1, "Fixed k1 for theta_p scans")->capture_default_str();
  scan->add_option("--k2", scan_k2, "Fixed k2 for theta_p scans")->capture_default_str();
  auto* scan_p_opt = scan->add_option("--p", scan_p, "Target probability for theta_p scans");
  scan->add_option("--M", scan_years, "Return period in years (alternative to --p)")->excludes(scan_p_opt);
  scan->add_option("--periods-per-year", scan_periods)->capture_default_str();

  // return-level
  DataOptions rl_data;
  std::vector<size_t> rl_years;
  size_t rl_periods = 365, rl_k = 50, rl_k1 = 200, rl_k2 = 200;
  auto* return_level = app.add_subcommand("return-level", "E[X | Y exceeds its M-year return level]");
  rl_data.add_to(return_level);
  return_level->add_option("--M", rl_years, "Return period(s) in years")->required();
  return_level->add_option("--periods-per-year", rl_periods)->capture_default_str();
  return_level->add_option("--k", rl_k)->capture_default_str();
  return_level->add_option("--k1", rl_k1)->capture_default_str();
  return_level->add_option("--k2", rl_k2)->capture_default_str();

  // simulate
  std::string sim_model = "example1";
  size_t sim_n = 5000, sim_replicates = 100, sim_k = 200, sim_k1 = 200, sim_k2 = 200;
  std::vector<double> sim_p;
  uint64_t sim_seed = 1;
  bool sim_no_empirical = false;
  unsigned sim_threads = 0;
  std::string sim_errors_out;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo relative errors on a built-in model");
  simulate->add_option("--model", sim_model)->check(CLI::IsMember({"example1", "example2"}))->capture_default_str();
  simulate->add_option("--n", sim_n, "Sample size")->capture_default_str();
  simulate->add_option("--replicates", sim_replicates, "Number of replicates (500 for the full study)")
      ->capture_default_str();
  simulate->add_option("--p", sim_p, "Target probabilities (default 10/n, 1/n, 1/(10n))");
  simulate->add_option("--k", sim_k)->capture_default_str();
  simulate->add_option("--k1", sim_k1)->capture_default_str();
  simulate->add_option("--k2", sim_k2)->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Master seed")->capture_default_str();
  simulate->add_option("--threads", sim_threads, "Worker threads (0: all cores)");
  simulate->add_flag("--no-empirical", sim_no_empirical, "Skip the empirical estimator");
  simulate->add_option("--errors-out", sim_errors_out, "Write per-replicate relative errors as TSV");

  // oracle
  std::string or_model = "example1";
  size_t or_n = 5000;
  std::vector<double> or_p;
  std::vector<double> or_t;
  auto* oracle = app.add_subcommand("oracle", "True MES and asymptotic constants of a built-in model");
  oracle->add_option("--model", or_model)->check(CLI::IsMember({"example1", "example2"}))->capture_default_str();
  oracle->add_option("--n", or_n, "Sample size used for the default probabilities")->capture_default_str();
  oracle->add_option("--p", or_p, "Probabilities (default 10/n, 1/n, 1/(10n))");
  oracle->add_option("--t", or_t, "Levels t for the limit ratio theta_{1/t} / (t^(1-1/eta) U1(t))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitArgument;
  }

  try {
    Json doc;
    Json warnings = Json::array();

    if (*estimate) {
      const auto loaded = est_data.load();
      const mes_estimator_config config{est_k, est_k1, est_k2, est_p};
      mes_estimate e;
      check(mes_theta_p_estimate(loaded.sample.get(), &config, &e));
      collect_warnings(e, "", warnings);
      std::cout << "quantity\tvalue\n"
                << "n\t" << mes_sample_size(loaded.sample.get()) << "\n"
                << "dropped\t" << loaded.dropped << "\n"
                << "theta_p\t" << fmt(e.theta_p) << "\n"
                << "theta_kn\t" << fmt(e.theta_kn) << "\n"
                << "gamma1_hat\t" << fmt(e.gamma1_hat) << "\n"
                << "eta_hat\t" << fmt(e.eta_hat) << "\n"
                << "d_n\t" << fmt(e.d_n) << "\n"
                << "exponent\t" << fmt(e.exponent) << "\n";
      doc["command"] = "estimate";
      doc["data"] = est_data.describe(loaded);
      doc["config"] = {{"k", est_k}, {"k1", est_k1}, {"k2", est_k2}, {"p", est_p}};
      doc["estimate"] = estimate_json(e);
    } else if (*scan) {
      const auto loaded = scan_data.load();
      mes_scan_target target = scan_target == "gamma1" ? MES_SCAN_GAMMA1
                               : scan_target == "eta"  ? MES_SCAN_ETA
                                                       : MES_SCAN_THETA_P;
      double p = scan_p;
      if (scan_years > 0) {
        const mes_return_level_query q{scan_years, scan_periods, 1, scan_k1, scan_k2};
        p = mes_return_level_probability(&q);
      }
      if (target == MES_SCAN_THETA_P && !(p > 0.0)) {
        throw CliFailure{kExitArgument, "theta_p scans need --p or --M"};
      }
      const mes_estimator_config fixed{scan_first, scan_k1, scan_k2, p};
      size_t count = 0;
      check(mes_k_scan(loaded.sample.get(), target, scan_first, scan_last, scan_step, &fixed, nullptr, 0, &count));
      std::vector<mes_scan_row> rows(count);
      check(mes_k_scan(loaded.sample.get(), target, scan_first, scan_last, scan_step, &fixed, rows.data(),
                       rows.size(), &count));
      std::cout << "k\t" << scan_target << "\n";
      Json table = Json::array();
      for (const auto& r : rows) {
        std::cout << r.k << "\t" << fmt(r.estimate) << "\n";
        table.push_back({{"k", r.k}, {"estimate", r.estimate}});
      }
      doc["command"] = "scan";
      doc["data"] = scan_data.describe(loaded);
      doc["config"] = {{"target", scan_target}, {"k_min", scan_first}, {"k_max", scan_last},
                       {"k_step", scan_step}};
      if (target == MES_SCAN_THETA_P) {
        doc["config"]["k1"] = scan_k1;
        doc["config"]["k2"] = scan_k2;
        doc["config"]["p"] = p;
      }
      doc["rows"] = table;
    } else if (*return_level) {
      const auto loaded = rl_data.load();
      std::cout << "M\tp\ttheta_p\ttheta_kn\tgamma1_hat\teta_hat\td_n\n";
      Json results = Json::array();
      for (size_t years : rl_years) {
        const mes_return_level_query q{years, rl_periods, rl_k, rl_k1, rl_k2};
        mes_estimate e;
        check(mes_return_level(loaded.sample.get(), &q, &e));
        const double p = mes_return_level_probability(&q);
        collect_warnings(e, "M=" + std::to_string(years) + ": ", warnings);
        std::cout << years << "\t" << fmt(p) << "\t" << fmt(e.theta_p) << "\t" << fmt(e.theta_kn) << "\t"
                  << fmt(e.gamma1_hat) << "\t" << fmt(e.eta_hat) << "\t" << fmt(e.d_n) << "\n";
        Json r = estimate_json(e);
        r["M"] = years;
        r["p"] = p;
        results.push_back(r);
      }
      doc["command"] = "return-level";
      doc["data"] = rl_data.describe(loaded);
      doc["config"] = {{"periods_per_year", rl_periods}, {"k", rl_k}, {"k1", rl_k1}, {"k2", rl_k2}};
      doc["results"] = results;
    } else if (*simulate) {
      mes_simulation_config config;
      mes_simulation_config_init(&config);
      config.model = model_from_name(sim_model);
      config.n = sim_n;
      config.replicates = sim_replicates;
      config.probabilities = sim_p.empty() ? nullptr : sim_p.data();
      config.probability_count = sim_p.size();
      config.k = sim_k;
      config.k1 = sim_k1;
      config.k2 = sim_k2;
      config.master_seed = sim_seed;
      config.include_empirical = sim_no_empirical ? 0 : 1;
      config.threads = sim_threads;
      mes_experiment* raw = nullptr;
      check(mes_simulate(&config, &raw));
      ExperimentPtr experiment(raw);

      std::cout << "estimator\tp\ttrue_theta\tbias\tmedian\tq1\tq3\twhisker_low\twhisker_high\treplicates\n";
      Json cells = Json::array();
      std::ofstream errors_out;
      if (!sim_errors_out.empty()) {
        errors_out.open(sim_errors_out, std::ios::binary);
        if (!errors_out) throw CliFailure{kExitData, "cannot write '" + sim_errors_out + "'"};
        errors_out << "estimator\tp\treplicate\trelative_error\n";
      }
      for (size_t c = 0; c < mes_experiment_cell_count(experiment.get()); ++c) {
        mes_cell_info info;
        check(mes_experiment_cell(experiment.get(), c, &info));
        size_t len = 0;
        check(mes_experiment_errors(experiment.get(), c, nullptr, 0, &len));
        std::vector<double> errors(len);
        check(mes_experiment_errors(experiment.get(), c, errors.data(), errors.size(), &len));

        Json cell;
        cell["estimator"] = estimator_name(info.estimator);
        cell["p"] = info.p;
        cell["true_theta"] = info.true_theta;
        cell["available"] = info.available != 0;
        if (info.available) {
          const auto& s = info.summary;
          std::cout << estimator_name(info.estimator) << "\t" << fmt(info.p) << "\t" << fmt(info.true_theta) << "\t"
                    << fmt(s.bias) << "\t" << fmt(s.median) << "\t" << fmt(s.q1) << "\t" << fmt(s.q3) << "\t"
                    << fmt(s.whisker_low) << "\t" << fmt(s.whisker_high) << "\t" << s.count << "\n";
          cell["summary"] = {{"bias", s.bias},         {"median", s.median},
                             {"q1", s.q1},             {"q3", s.q3},
                             {"iqr", s.iqr},           {"whisker_low", s.whisker_low},
                             {"whisker_high", s.whisker_high}};
          cell["errors"] = errors;
          for (size_t i = 0; i < errors.size(); ++i) {
            if (errors_out.is_open()) {
              errors_out << estimator_name(info.estimator) << "\t" << fmt(info.p) << "\t" << i << "\t"
                         << fmt(errors[i]) << "\n";
            }
          }
        } else {
          std::cout << estimator_name(info.estimator) << "\t" << fmt(info.p) << "\t" << fmt(info.true_theta)
                    << "\tNA\tNA\tNA\tNA\tNA\tNA\t0\n";
          cell["note"] = info.note;
          warnings.push_back(std::string(estimator_name(info.estimator)) + " at p=" + fmt(info.p) + ": " + info.note);
        }
        cells.push_back(cell);
      }
      Json normality = Json::array();
      for (size_t i = 0; i < mes_experiment_normality_count(experiment.get()); ++i) {
        mes_normality d;
        check(mes_experiment_normality(experiment.get(), i, &d));
        normality.push_back({{"p", d.p},
                             {"d_n", d.d_n},
                             {"rate", d.rate},
                             {"standardized_variance", d.variance},
                             {"sigma2", d.sigma2},
                             {"variance_ratio", d.ratio}});
      }
      doc["command"] = "simulate";
      doc["model"] = model_json(sim_model, config.model);
      doc["config"] = {{"n", sim_n},   {"replicates", sim_replicates}, {"k", sim_k},
                       {"k1", sim_k1}, {"k2", sim_k2},                 {"include_empirical", !sim_no_empirical}};
      doc["seed"] = sim_seed;
      doc["cells"] = cells;
      doc["normality"] = normality;
    } else if (*oracle) {
      const mes_model_spec spec = model_from_name(or_model);
      if (or_p.empty()) {
        const double n = static_cast<double>(or_n);
        or_p = {10.0 / n, 1.0 / n, 1.0 / (10.0 * n)};
      }
      double gamma1 = 0, eta = 0, d = 0, limit = 0, sigma2 = 0;
      check(mes_oracle_tail_dependence(&spec, &gamma1, &eta, &d));
      check(mes_oracle_limit_constant(&spec, &limit));
      check(mes_oracle_sigma2(&spec, &sigma2));
      std::cout << "quantity\targument\tvalue\n"
                << "gamma1\t-\t" << fmt(gamma1) << "\n"
                << "eta\t-\t" << fmt(eta) << "\n"
                << "d\t-\t" << fmt(d) << "\n"
                << "limit_constant\t-\t" << fmt(limit) << "\n"
                << "sigma2\t-\t" << fmt(sigma2) << "\n";
      Json thetas = Json::array();
      for (double p : or_p) {
        double theta = 0, qy = 0;
        check(mes_oracle_true_theta(&spec, p, nullptr, &theta));
        check(mes_oracle_marginal_quantile(&spec, MES_MARGIN_Y, 1.0 - p, &qy));
        std::cout << "true_theta\tp=" << fmt(p) << "\t" << fmt(theta) << "\n";
        thetas.push_back({{"p", p}, {"y_quantile", qy}, {"theta", theta}});
      }
      Json ratios = Json::array();
      for (double t : or_t) {
        double ratio = 0;
        check(mes_oracle_limit_ratio(&spec, t, nullptr, &ratio));
        std::cout << "limit_ratio\tt=" << fmt(t) << "\t" << fmt(ratio) << "\n";
        ratios.push_back({{"t", t}, {"ratio", ratio}});
      }
      doc["command"] = "oracle";
      doc["model"] = model_json(or_model, spec);
      doc["tail"] = {{"gamma1", gamma1}, {"eta", eta}, {"d", d}};
      doc["limit_constant"] = limit;
      doc["sigma2"] = sigma2;
      doc["true_theta"] = thetas;
      doc["limit_ratio"] = ratios;
    }

    doc["warnings"] = warnings;
    print_warnings(warnings);
    write_document(out_path, doc);
    return kExitOk;
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
