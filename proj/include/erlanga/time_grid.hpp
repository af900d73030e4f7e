#pragma once

#include <Eigen/Core>

namespace erlanga {

/// Strictly increasing, finite sampling times starting at 0.
class TimeGrid {
public:
  /// Throws std::invalid_argument on an empty, non-monotone, non-finite grid
  /// or one whose first point is not 0.
  explicit TimeGrid(Eigen::VectorXd points);

  /// 0, dt, 2 dt, ... up to t_max (inclusive within rounding).
  static TimeGrid uniform(double t_max, double dt);

  [[nodiscard]] const Eigen::VectorXd& points() const noexcept { return points_; }
  [[nodiscard]] Eigen::Index size() const noexcept { return points_.size(); }
  [[nodiscard]] double operator[](Eigen::Index i) const { return points_[i]; }
  [[nodiscard]] double back() const { return points_[points_.size() - 1]; }
  /// Smallest gap between consecutive points; +inf for a single point.
  [[nodiscard]] double min_spacing() const;

private:
  Eigen::VectorXd points_;
};

/// Deterministic curve sampled on a grid.
struct Curve {
  Eigen::VectorXd times;
  Eigen::VectorXd values;
};

using FluidCurve = Curve;
using VarianceCurve = Curve;

}  // namespace erlanga
