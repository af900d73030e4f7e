#include "erlanga/diffusion.hpp"

#include "erlanga/fluid.hpp"
#include "erlanga/integrator.hpp"

#include <algorithm>
#include <cmath>
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

// Exact solution of the q >= c linear piece after time s from (q, v).
double variance_above(const ErlangAParams& p, double q, double v, double s)
{
  const double fixed = overloaded_fixed_point(p);
  return (v - q - (p.service_capacity() - p.theta * p.c()) / p.theta) * std::exp(-2.0 * p.theta * s) +
         p.lambda / p.theta + (q - fixed) * std::exp(-p.theta * s);
}

// Exact solution of the q < c linear piece after time s from (q, v).
double variance_below(const ErlangAParams& p, double q, double v, double s)
{
  const double decay = std::exp(-p.mu * s);
  return (v - q) * decay * decay + (1.0 - decay) * p.lambda / p.mu + q * decay;
}

}  // namespace

double diffusion_ode_rhs(const ErlangAParams& p, double q, double v)
{
  require_finite_nonnegative(q, "q");
  require_finite_nonnegative(v, "v");
  const double c = p.c();
  const double relax = q < c ? p.mu : p.theta;
  return p.lambda + p.mu * std::min(q, c) + p.theta * std::max(q - c, 0.0) - 2.0 * v * relax;
}

double diffusion_variance(const ErlangAParams& p, double q0, double v0, double t)
{
  validate(p);
  require_finite_nonnegative(q0, "q0");
  require_finite_nonnegative(v0, "v0");
  require_finite_nonnegative(t, "t");
  const double c = p.c();

  if (q0 > c) {
    const double t1 = crossing_time(p, q0).t_star;
    if (t <= t1) {
      return variance_above(p, q0, v0, t);
    }
    return variance_below(p, c, variance_above(p, q0, v0, t1), t - t1);
  }

  if (!p.overloaded()) {
    return variance_below(p, q0, v0, t);
  }
  const double t2 = q0 < c ? crossing_time(p, q0).t_star : 0.0;
  if (t <= t2) {
    return variance_below(p, q0, v0, t);
  }
  return variance_above(p, c, variance_below(p, q0, v0, t2), t - t2);
}

Eigen::VectorXd diffusion_variance(const ErlangAParams& p, double q0, double v0, const TimeGrid& grid)
{
  return grid.points().unaryExpr([&](double t) { return diffusion_variance(p, q0, v0, t); });
}

double diffusion_steady_state(const ErlangAParams& p)
{
  validate(p);
  return p.overloaded() ? p.lambda / p.theta : p.lambda / p.mu;
}

VarianceCurve diffusion_variance_numeric(const ErlangAParams& p, double q0, double v0,
                                         const TimeGrid& grid)
{
  const Eigen::Matrix2Xd states = integrate_mean_variance(p, q0, v0, grid);
  return {grid.points(), states.row(1).transpose()};
}

}  // namespace erlanga
