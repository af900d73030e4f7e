#pragma once

#include "erlanga/params.hpp"
#include "erlanga/time_grid.hpp"

#include <Eigen/Core>

namespace erlanga {

/// lambda + mu (q ^ c) + theta (q - c)^+ - 2 v (mu 1{q < c} + theta 1{q >= c})
double diffusion_ode_rhs(const ErlangAParams& params, double q, double v);

/// Closed-form diffusion variance v(t) with fluid start q0 and v(0) = v0.
/// Piecewise in the same regimes as fluid_queue; the post-crossing piece is
/// restarted from (c, v(t*)).
double diffusion_variance(const ErlangAParams& params, double q0, double v0, double t);
Eigen::VectorXd diffusion_variance(const ErlangAParams& params, double q0, double v0,
                                   const TimeGrid& grid);

/// lambda/mu when lambda <= mu c, else lambda/theta.
double diffusion_steady_state(const ErlangAParams& params);

VarianceCurve diffusion_variance_numeric(const ErlangAParams& params, double q0, double v0,
                                         const TimeGrid& grid);

}  // namespace erlanga
