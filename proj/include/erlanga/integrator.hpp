#pragma once

#include "erlanga/params.hpp"
#include "erlanga/time_grid.hpp"

#include <Eigen/Core>

namespace erlanga {

/// Which linear piece of the fluid/diffusion vector field is active.
/// `below` is the q < c (no queue) piece, `above` the q >= c piece.
enum class Regime { below, above };

/// Right-hand side of the coupled (q, v) system restricted to one regime.
Eigen::Vector2d mean_variance_rhs(const ErlangAParams& params, const Eigen::Vector2d& state,
                                  Regime regime);

/// One classical RK4 step of length h inside a fixed regime.
Eigen::Vector2d rk4_step(const ErlangAParams& params, const Eigen::Vector2d& state, double h,
                         Regime regime);

/// Fixed-step RK4 integration of (q, v) from (q0, v0) with step
/// <= min(grid spacing, 1e-3 / max(mu, theta)). The step in which q passes
/// through c is split at the located crossing and the regime is switched
/// there, so the kink in the vector field does not cost accuracy.
/// Column i holds (q, v) at grid point i.
Eigen::Matrix2Xd integrate_mean_variance(const ErlangAParams& params, double q0, double v0,
                                         const TimeGrid& grid);

}  // namespace erlanga
