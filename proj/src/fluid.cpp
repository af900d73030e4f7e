#include "erlanga/fluid.hpp"

#include "erlanga/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace erlanga {

namespace {

void require_finite_nonnegative(double value, const char* what)
{
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

double overloaded_fixed_point(const ErlangAParams& p)
{
  return (p.lambda - p.service_capacity() + p.theta * p.c()) / p.theta;
}

double fluid_ode_rhs(const ErlangAParams& p, double q)
{
  require_finite_nonnegative(q, "q");
  return p.lambda - p.mu * std::min(q, p.c()) - p.theta * std::max(q - p.c(), 0.0);
}

RegimeCrossing crossing_time(const ErlangAParams& p, double q0)
{
  validate(p);
  require_finite_nonnegative(q0, "q0");
  const double c = p.c();
  const double capacity = p.service_capacity();
  if (q0 > c && p.lambda < capacity) {
    const double ratio = (p.theta * q0 - p.lambda + capacity - p.theta * c) / (capacity - p.lambda);
    return {CrossingKind::down_through_c, std::log(ratio) / p.theta};
  }
  if (q0 < c && p.lambda > capacity) {
    const double offered = p.lambda / p.mu;
    return {CrossingKind::up_through_c, std::log((q0 - offered) / (c - offered)) / p.mu};
  }
  return {CrossingKind::none, std::numeric_limits<double>::infinity()};
}

double fluid_queue(const ErlangAParams& p, double q0, double t)
{
  validate(p);
  require_finite_nonnegative(q0, "q0");
  require_finite_nonnegative(t, "t");
  const double c = p.c();
  const double above = overloaded_fixed_point(p);
  const double below = p.lambda / p.mu;

  if (q0 > c) {
    // Abandonment regime until (and unless) the trajectory reaches c.
    const double t1 = crossing_time(p, q0).t_star;
    if (t <= t1) {
      return above + (q0 - above) * std::exp(-p.theta * t);
    }
    return below + (c - below) * std::exp(-p.mu * (t - t1));
  }

  if (!p.overloaded()) {
    return below + (q0 - below) * std::exp(-p.mu * t);
  }
  // q0 <= c, lambda > mu c. At q0 == c the crossing is immediate.
  const double t2 = q0 < c ? crossing_time(p, q0).t_star : 0.0;
  if (t <= t2) {
    return below + (q0 - below) * std::exp(-p.mu * t);
  }
  return above + ((p.service_capacity() - p.lambda) / p.theta) * std::exp(-p.theta * (t - t2));
}

Eigen::VectorXd fluid_queue(const ErlangAParams& p, double q0, const TimeGrid& grid)
{
  return grid.points().unaryExpr([&](double t) { return fluid_queue(p, q0, t); });
}

double fluid_steady_state(const ErlangAParams& p)
{
  validate(p);
  return p.overloaded() ? overloaded_fixed_point(p) : p.lambda / p.mu;
}

FluidCurve fluid_queue_numeric(const ErlangAParams& p, double q0, const TimeGrid& grid)
{
  const Eigen::Matrix2Xd states = integrate_mean_variance(p, q0, 0.0, grid);
  return {grid.points(), states.row(0).transpose()};
}

}  // namespace erlanga
