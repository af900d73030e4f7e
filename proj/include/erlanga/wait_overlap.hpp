#pragma once

#include "erlanga/params.hpp"

#include <cstdint>

namespace erlanga {

struct MomentPair {
  double mean = 0.0;
  double variance = 0.0;
};

/// How the derivative of the digamma mean-wait map enters the
/// linear-noise covariance Cov[W, Q].
///
/// `published` uses v psi'(mu c/theta + (q - c)^+) 1{q > c}.
/// `chain_rule` differentiates (1/theta) psi(mu c/theta + x) and carries the
/// extra 1/theta. The wait-variance term is the same under both: the 1/theta
/// there is already squared into the 1/theta^2 prefactor.
enum class TaylorForm { published, chain_rule };

/// Fluid virtual wait (1/theta) log(1 + theta (q - c)^+ / (mu c)).
double fluid_wait(const ErlangAParams& params, double qt);

/// Moments of the hypoexponential wait sum_{j=0}^{k} Exp(mu c + theta j),
/// i.e. a non-abandoning arrival that finds Q = c + k.
MomentPair cond_wait_moments(const ErlangAParams& params, std::int64_t k);

/// (1/theta) (psi(mu c/theta + (q - c)^+) - psi(mu c/theta)); real argument.
double wait_mean_approx(const ErlangAParams& params, double qt);

/// E[Var[W|Q]] + Var[E[W|Q]] with both terms linearised around (qt, vt).
double wait_var_approx(const ErlangAParams& params, double qt, double vt);

double wait_queue_cov_approx(const ErlangAParams& params, double qt, double vt,
                             TaylorForm form = TaylorForm::published);

/// lambda/mu + lambda w(t) + q(t).
double overlap_mean_fluid(const ErlangAParams& params, double qt);

/// t -> infinity limit of overlap_mean_fluid.
double overlap_mean_steady(const ErlangAParams& params);

/// Var[O] = lambda/mu + lambda^2/mu^2 + lambda E[W] + lambda^2 Var[W] + Var[Q]
///          + 2 lambda Cov[W, Q], every term from the digamma/trigamma
/// approximations at (qt, vt).
double overlap_var_approx(const ErlangAParams& params, double qt, double vt,
                          TaylorForm form = TaylorForm::published);

/// Same decomposition with the wait frozen at its fluid value w(t):
/// lambda/mu + lambda^2/mu^2 + lambda w(t) + v(t).
double overlap_var_diffusion(const ErlangAParams& params, double qt, double vt);

/// Steady-state limit of overlap_var_approx. lambda == mu c takes the
/// underloaded value 2 lambda/mu + lambda^2/mu^2.
double overlap_var_steady(const ErlangAParams& params);

}  // namespace erlanga
