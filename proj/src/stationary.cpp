#include "erlanga/stationary.hpp"

#include "erlanga/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace erlanga {

double death_rate(const ErlangAParams& p, int k)
{
  return p.mu * std::min(k, p.servers) + p.theta * std::max(k - p.servers, 0);
}

StationaryDistribution stationary_distribution(const ErlangAParams& p, double tol)
{
  validate(p);
  if (!(tol > 0.0) || tol > 1e-6) {
    throw std::invalid_argument("stationary_distribution: tol must lie in (0, 1e-6]");
  }
  const double target = std::min(tol, 1e-10);
  const double scale = std::max({fluid_steady_state(p), p.lambda / p.mu, p.lambda / p.theta});
  const double start = std::ceil(3.0 * scale + 10.0 * p.c());
  if (!(start < static_cast<double>(std::numeric_limits<int>::max() / 4))) {
    throw std::invalid_argument("stationary_distribution: state space too large");
  }
  auto truncation = static_cast<int>(start);

  std::vector<double> log_weight{0.0};
  for (;;) {
    log_weight.reserve(static_cast<std::size_t>(truncation) + 1);
    while (static_cast<int>(log_weight.size()) <= truncation) {
      const int k = static_cast<int>(log_weight.size());
      log_weight.push_back(log_weight.back() + std::log(p.lambda) - std::log(death_rate(p, k)));
    }
    const double peak = *std::max_element(log_weight.begin(), log_weight.end());
    double total = 0.0;
    for (double lw : log_weight) {
      total += std::exp(lw - peak);
    }
    // Beyond K the ratio pi_{k+1}/pi_k is at most r < 1 once deaths outpace
    // arrivals, so the tail is bounded by pi_K r / (1 - r).
    const double ratio = p.lambda / death_rate(p, truncation + 1);
    if (ratio < 1.0) {
      const double last = std::exp(log_weight.back() - peak) / total;
      const double tail = last * ratio / (1.0 - ratio);
      if (tail <= target) {
        StationaryDistribution out;
        out.truncation = truncation;
        out.tail_bound = tail;
        out.probabilities.resize(truncation + 1);
        for (int k = 0; k <= truncation; ++k) {
          out.probabilities[k] = std::exp(log_weight[static_cast<std::size_t>(k)] - peak) / total;
        }
        return out;
      }
    }
    truncation *= 2;
  }
}

MomentPair exact_steady_moments(const ErlangAParams& p)
{
  const StationaryDistribution dist = stationary_distribution(p);
  const Eigen::VectorXd k = Eigen::VectorXd::LinSpaced(dist.truncation + 1, 0.0, dist.truncation);
  const double mean = dist.probabilities.dot(k);
  const double variance = dist.probabilities.dot((k.array() - mean).square().matrix());
  return {mean, std::max(variance, 0.0)};
}

namespace {

// Conditional wait moments for every retained state, by running sums of the
// stage means 1/(mu c + theta j) and variances 1/(mu c + theta j)^2.
struct ConditionalWait {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

ConditionalWait conditional_wait(const ErlangAParams& p, int truncation)
{
  ConditionalWait out{Eigen::VectorXd::Zero(truncation + 1), Eigen::VectorXd::Zero(truncation + 1)};
  double mean = 0.0;
  double variance = 0.0;
  for (int k = p.servers; k <= truncation; ++k) {
    const double rate = p.service_capacity() + p.theta * static_cast<double>(k - p.servers);
    mean += 1.0 / rate;
    variance += 1.0 / (rate * rate);
    out.mean[k] = mean;
    out.variance[k] = variance;
  }
  return out;
}

}  // namespace

MomentPair exact_steady_wait_moments(const ErlangAParams& p)
{
  const StationaryDistribution dist = stationary_distribution(p);
  const ConditionalWait cw = conditional_wait(p, dist.truncation);
  const double mean = dist.probabilities.dot(cw.mean);
  const double second = dist.probabilities.dot(cw.variance + cw.mean.cwiseAbs2());
  return {mean, std::max(second - mean * mean, 0.0)};
}

double exact_steady_wait_mean(const ErlangAParams& p) { return exact_steady_wait_moments(p).mean; }

MomentPair exact_steady_overlap_moments(const ErlangAParams& p)
{
  const StationaryDistribution dist = stationary_distribution(p);
  const ConditionalWait cw = conditional_wait(p, dist.truncation);
  const Eigen::ArrayXd k = Eigen::ArrayXd::LinSpaced(dist.truncation + 1, 0.0, dist.truncation);
  const double service_mean = 1.0 / p.mu;
  const double service_var = service_mean * service_mean;

  // Given Q = k: O = k + N(W + S), N a rate-lambda Poisson process.
  const Eigen::ArrayXd exposure = service_mean + cw.mean.array();
  const Eigen::ArrayXd cond_mean = k + p.lambda * exposure;
  const Eigen::ArrayXd cond_var =
      p.lambda * exposure + p.lambda * p.lambda * (service_var + cw.variance.array());

  const Eigen::ArrayXd& pi = dist.probabilities.array();
  const double mean = (pi * cond_mean).sum();
  const double variance = (pi * (cond_var + (cond_mean - mean).square())).sum();
  return {mean, variance};
}

double exact_steady_overlap_mean(const ErlangAParams& p)
{
  const StationaryDistribution dist = stationary_distribution(p);
  const Eigen::VectorXd k = Eigen::VectorXd::LinSpaced(dist.truncation + 1, 0.0, dist.truncation);
  return p.lambda / p.mu + p.lambda * exact_steady_wait_mean(p) + dist.probabilities.dot(k);
}

}  // namespace erlanga
