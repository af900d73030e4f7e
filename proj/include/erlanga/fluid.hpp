#pragma once

#include "erlanga/params.hpp"
#include "erlanga/time_grid.hpp"

#include <Eigen/Core>

namespace erlanga {

enum class CrossingKind { none, down_through_c, up_through_c };

/// Time at which the fluid trajectory started at q0 passes through c.
/// t_star is +inf when kind == none.
struct RegimeCrossing {
  CrossingKind kind = CrossingKind::none;
  double t_star = 0.0;
};

/// lambda - mu (q ^ c) - theta (q - c)^+
double fluid_ode_rhs(const ErlangAParams& params, double q);

/// A crossing exists only when q0 is on the far side of c from the fixed
/// point: q0 > c with lambda < mu c (downward) or q0 < c with lambda > mu c
/// (upward). q0 == c and lambda == mu c never cross.
RegimeCrossing crossing_time(const ErlangAParams& params, double q0);

/// Closed-form fluid queue q(t) started from q0.
double fluid_queue(const ErlangAParams& params, double q0, double t);
Eigen::VectorXd fluid_queue(const ErlangAParams& params, double q0, const TimeGrid& grid);

/// (lambda - mu c + theta c)/theta: fixed point of the q >= c piece.
double overloaded_fixed_point(const ErlangAParams& params);

/// lambda/mu when lambda <= mu c, else (lambda - mu c + theta c)/theta.
double fluid_steady_state(const ErlangAParams& params);

/// RK4 integration of the fluid ODE; independent check on fluid_queue.
FluidCurve fluid_queue_numeric(const ErlangAParams& params, double q0, const TimeGrid& grid);

}  // namespace erlanga
