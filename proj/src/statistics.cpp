#include "erlanga/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace erlanga {

double ObservableStatistics::mean_stderr() const
{
  const auto n = count();
  if (n < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::sqrt(accumulator_.covariance()(0, 0) / static_cast<double>(n));
}

double ObservableStatistics::variance() const
{
  if (count() < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::max(accumulator_.mean()[1] + accumulator_.covariance()(0, 0), 0.0);
}

double ObservableStatistics::variance_stderr() const
{
  const auto n = count();
  if (n < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  // variance ~ mean(s) + mean(m^2) - mean(m)^2
  const Eigen::Vector3d gradient(-2.0 * accumulator_.mean()[0], 1.0, 1.0);
  const double var = gradient.dot(accumulator_.covariance() * gradient);
  return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
}

double ObservableStatistics::stddev() const { return std::sqrt(variance()); }

double ObservableStatistics::stddev_stderr() const
{
  const double sd = stddev();
  if (!(sd > 0.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return variance_stderr() / (2.0 * sd);
}

}  // namespace erlanga
