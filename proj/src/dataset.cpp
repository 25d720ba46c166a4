#include "mes/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

#include "mes/error.hpp"

namespace mes {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one line; double quotes group a field and "" is a literal quote.
std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  double value = 0.0;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::size_t resolve_column(const std::string& column, const std::vector<std::string>& header, bool has_header) {
  if (has_header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == column) return i;
    }
  }
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), index);
  if (ec == std::errc{} && ptr == column.data() + column.size() && (!has_header || index < header.size())) {
    return index;
  }
  throw DataError(ErrorCode::MissingColumn, "column '" + column + "' not found");
}

}  // namespace

void DatasetConfig::validate() const {
  if (column_x.empty() || column_y.empty()) throw ArgumentError("x and y columns must be given");
  if (column_x == column_y) throw ArgumentError("x and y columns must be distinct");
  if (delimiter == '"' || delimiter == '\n' || delimiter == '\r') throw ArgumentError("invalid delimiter");
}

LoadedDataset load_paired_csv(const DatasetConfig& config) {
  config.validate();
  std::ifstream in(config.path);
  if (!in) throw DataError(ErrorCode::Io, "cannot open '" + config.path + "'");

  std::string line;
  std::vector<std::string> header;
  if (config.has_header) {
    if (!std::getline(in, line)) throw DataError(ErrorCode::NoRows, "'" + config.path + "' is empty");
    header = split_fields(line, config.delimiter);
  }
  const std::size_t cx = resolve_column(config.column_x, header, config.has_header);
  const std::size_t cy = resolve_column(config.column_y, header, config.has_header);
  if (cx == cy) throw ArgumentError("x and y columns resolve to the same field");

  auto is_missing = [&](std::string_view field) {
    return std::find(config.missing_markers.begin(), config.missing_markers.end(), field) !=
           config.missing_markers.end();
  };

  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t rows = 0;
  std::size_t dropped = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++rows;
    const auto fields = split_fields(line, config.delimiter);
    if (std::max(cx, cy) >= fields.size()) {
      ++dropped;
      continue;
    }
    const auto fx = trim(fields[cx]);
    const auto fy = trim(fields[cy]);
    if (is_missing(fx) || is_missing(fy)) {
      ++dropped;
      continue;
    }
    const auto x = parse_number(fx);
    const auto y = parse_number(fy);
    if (!x || !y || *x < 0.0) {
      ++dropped;
      continue;
    }
    xs.push_back(*x);
    ys.push_back(*y);
  }
  if (in.bad()) throw DataError(ErrorCode::Io, "read error on '" + config.path + "'");
  if (xs.empty()) {
    throw DataError(ErrorCode::NoRows, "no usable rows in '" + config.path + "' (" + std::to_string(rows) +
                                           " read, " + std::to_string(dropped) + " dropped)");
  }
  return {PairedSample(std::move(xs), std::move(ys)), rows, dropped};
}

const char* to_string(ScanTarget target) noexcept {
  switch (target) {
    case ScanTarget::Gamma1: return "gamma1";
    case ScanTarget::Eta: return "eta";
    case ScanTarget::ThetaP: return "theta_p";
  }
  return "unknown";
}

std::vector<ScanRow> k_scan(const PairedSample& sample, ScanTarget target, const KRange& range,
                            const EstimatorConfig& fixed) {
  if (range.step < 1) throw ArgumentError("k scan step must be positive");
  if (range.first < 1 || range.first > range.last) throw ArgumentError("empty k range");
  if (range.last >= sample.size()) {
    throw ArgumentError("k range must lie within 1.." + std::to_string(sample.size() - 1));
  }
  std::vector<ScanRow> rows;
  for (std::size_t k = range.first; k <= range.last; k += range.step) {
    double estimate = 0.0;
    switch (target) {
      case ScanTarget::Gamma1: estimate = hill_gamma(sample.x(), k); break;
      case ScanTarget::Eta: estimate = eta_estimate(sample, k); break;
      case ScanTarget::ThetaP: {
        EstimatorConfig config = fixed;
        config.k = k;
        estimate = theta_p_estimate(sample, config).theta_p;
        break;
      }
    }
    rows.push_back({k, estimate});
  }
  return rows;
}

double ReturnLevelQuery::probability() const {
  return 1.0 / (static_cast<double>(periods_per_year) * static_cast<double>(years));
}

void ReturnLevelQuery::validate() const {
  if (years < 1) throw ArgumentError("return period M must be at least one year");
  if (periods_per_year < 1) throw ArgumentError("periods per year must be positive");
  if (!(probability() < 1.0)) throw ArgumentError("return level probability must be below 1");
}

MesEstimate return_level_mes(const PairedSample& sample, const ReturnLevelQuery& query) {
  query.validate();
  return theta_p_estimate(sample, {query.k, query.k1, query.k2, query.probability()});
}

}  // namespace mes
