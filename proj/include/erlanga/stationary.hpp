#pragma once

#include "erlanga/params.hpp"
#include "erlanga/wait_overlap.hpp"

#include <Eigen/Core>

namespace erlanga {

/// Stationary law of the M/M/c+M birth-death chain on {0, ..., K}.
/// probabilities are normalised over the retained states; tail_bound bounds
/// the (normalised) mass beyond K.
struct StationaryDistribution {
  Eigen::VectorXd probabilities;
  int truncation = 0;
  double tail_bound = 0.0;
};

/// Death rate out of state k: mu (k ^ c) + theta (k - c)^+.
double death_rate(const ErlangAParams& params, int k);

/// pi_k proportional to prod_{j=1}^{k} lambda / death_rate(j), computed in log
/// space. The truncation starts at ceil(3 max(q_inf, lambda/mu, lambda/theta)
/// + 10 c) and doubles until the geometric tail bound is <= min(tol, 1e-10).
StationaryDistribution stationary_distribution(const ErlangAParams& params, double tol = 1e-12);

/// Mean and variance of the stationary queue length.
MomentPair exact_steady_moments(const ErlangAParams& params);

/// Stationary virtual (non-abandoning) wait, by PASTA:
/// sum_{k >= c} pi_k E[W_{k-c}]. Variance by total variance.
MomentPair exact_steady_wait_moments(const ErlangAParams& params);
double exact_steady_wait_mean(const ErlangAParams& params);

/// E[O] = lambda/mu + lambda E[W] + E[Q] and the matching variance of
/// O = Q + N(W + S) with S ~ Exp(mu).
MomentPair exact_steady_overlap_moments(const ErlangAParams& params);
double exact_steady_overlap_mean(const ErlangAParams& params);

}  // namespace erlanga
