#include "erlanga/time_grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace erlanga {

TimeGrid::TimeGrid(Eigen::VectorXd points) : points_(std::move(points))
{
  if (points_.size() == 0) {
    throw std::invalid_argument("time grid must not be empty");
  }
  if (points_[0] != 0.0) {
    throw std::invalid_argument("time grid must start at 0");
  }
  for (Eigen::Index i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) {
      throw std::invalid_argument("time grid points must be finite");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::uniform(double t_max, double dt)
{
  if (!std::isfinite(t_max) || t_max < 0.0) {
    throw std::invalid_argument("t_max must be finite and >= 0");
  }
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw std::invalid_argument("dt must be finite and > 0");
  }
  const auto steps = static_cast<Eigen::Index>(std::floor(t_max / dt + 1e-9));
  // i * dt rather than repeated addition keeps 0.1-steps free of drift.
  Eigen::VectorXd points = Eigen::VectorXd::LinSpaced(steps + 1, 0.0, 0.0);
  for (Eigen::Index i = 0; i <= steps; ++i) {
    points[i] = static_cast<double>(i) * dt;
  }
  return TimeGrid(std::move(points));
}

double TimeGrid::min_spacing() const
{
  if (points_.size() < 2) {
    return std::numeric_limits<double>::infinity();
  }
  return (points_.tail(points_.size() - 1) - points_.head(points_.size() - 1)).minCoeff();
}

}  // namespace erlanga
