#include "mes/evt_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mes/error.hpp"

namespace mes {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError(std::string(what) + " contains a non-finite value");
  }
}

}  // namespace

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.empty()) throw ArgumentError("paired sample must contain at least one observation");
  if (x_.size() != y_.size()) {
    throw ArgumentError("paired sample has " + std::to_string(x_.size()) + " x values but " +
                        std::to_string(y_.size()) + " y values");
  }
  require_finite(x_, "x");
  require_finite(y_, "y");
  if (std::any_of(x_.begin(), x_.end(), [](double v) { return v < 0.0; })) {
    throw ArgumentError("x values must be nonnegative");
  }
}

double order_statistic(std::span<const double> values, std::size_t j) {
  if (j < 1 || j > values.size()) {
    throw ArgumentError("order statistic index " + std::to_string(j) + " outside 1.." +
                        std::to_string(values.size()));
  }
  require_finite(values, "values");
  std::vector<double> work(values.begin(), values.end());
  auto nth = work.begin() + static_cast<std::ptrdiff_t>(j - 1);
  std::nth_element(work.begin(), nth, work.end());
  return *nth;
}

RankVector compute_ranks(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("cannot rank an empty vector");
  require_finite(values, "values");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  RankVector out;
  out.ranks.resize(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) out.ranks[order[pos]] = pos + 1;
  return out;
}

std::vector<double> t_statistics(const PairedSample& sample) {
  const auto rx = compute_ranks(sample.x());
  const auto ry = compute_ranks(sample.y());
  const double np1 = static_cast<double>(sample.size()) + 1.0;
  std::vector<double> t(sample.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double tx = np1 / (np1 - static_cast<double>(rx.ranks[i]));
    const double ty = np1 / (np1 - static_cast<double>(ry.ranks[i]));
    t[i] = std::min(tx, ty);
  }
  return t;
}

}  // namespace mes
