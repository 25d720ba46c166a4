#pragma once

// Order statistics, ranks and the rank-transformed statistic used by the
// tail dependence estimator.

#include <cstddef>
#include <span>
#include <vector>

namespace mes {

/// n paired observations (x_i, y_i). x is the variable whose conditional
/// expectation is estimated, y the conditioning variable.
///
/// Both vectors must have the same nonzero length and hold finite values;
/// x must be nonnegative. Construction throws ArgumentError otherwise.
class PairedSample {
 public:
  PairedSample(std::vector<double> x, std::vector<double> y);

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

enum class TiePolicy {
  OrdinalByIndex,  // equal values ranked by original position
};

struct RankVector {
  std::vector<std::size_t> ranks;  // 1-based, a permutation of 1..n
  TiePolicy tie_policy = TiePolicy::OrdinalByIndex;
};

/// j-th smallest value (1-based), so order_statistic(v, v.size()) is the max.
double order_statistic(std::span<const double> values, std::size_t j);

/// Rank 1 is the smallest value. Ties are broken by index, so the result is
/// always a permutation.
RankVector compute_ranks(std::span<const double> values);

/// T_i = min((n+1)/(n+1-Rx_i), (n+1)/(n+1-Ry_i)).
std::vector<double> t_statistics(const PairedSample& sample);

}  // namespace mes
