#pragma once

// Dataset ingestion and the application workflows built on the estimators:
// k-stability scans and return-level conditional expectations.

#include <cstddef>
#include <string>
#include <vector>

#include "mes/estimators.hpp"
#include "mes/evt_core.hpp"

namespace mes {

struct DatasetConfig {
  std::string path;
  std::string column_x;  // header name, or 0-based index when no header cell matches
  std::string column_y;
  std::vector<std::string> missing_markers = {"", "NA", "-"};
  char delimiter = ',';
  bool has_header = true;

  void validate() const;
};

struct LoadedDataset {
  PairedSample sample;
  std::size_t rows_read = 0;
  std::size_t dropped = 0;  // missing marker, unparsable field, or negative x
};

/// Throws DataError with ErrorCode::Io, ::MissingColumn or ::NoRows.
LoadedDataset load_paired_csv(const DatasetConfig& config);

enum class ScanTarget { Gamma1, Eta, ThetaP };

const char* to_string(ScanTarget target) noexcept;

struct KRange {
  std::size_t first = 1;
  std::size_t last = 1;
  std::size_t step = 1;
};

struct ScanRow {
  std::size_t k = 0;
  double estimate = 0.0;
};

/// One row per k in the range, ordered by k. For ThetaP the scanned k is the
/// exceedance count k while k1, k2 and p come from `fixed`; for Gamma1 and Eta
/// the scanned value is k1 or k2 respectively.
std::vector<ScanRow> k_scan(const PairedSample& sample, ScanTarget target, const KRange& range,
                            const EstimatorConfig& fixed);

struct ReturnLevelQuery {
  std::size_t years = 50;
  std::size_t periods_per_year = 365;
  std::size_t k = 50;
  std::size_t k1 = 200;
  std::size_t k2 = 200;

  /// 1 / (periods_per_year * years)
  double probability() const;
  void validate() const;
};

MesEstimate return_level_mes(const PairedSample& sample, const ReturnLevelQuery& query);

}  // namespace mes
