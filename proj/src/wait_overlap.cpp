#include "erlanga/wait_overlap.hpp"

#include "erlanga/fluid.hpp"
#include "erlanga/special_functions.hpp"

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

double excess(const ErlangAParams& p, double qt) { return std::max(qt - p.c(), 0.0); }

// mu c / theta: the shift at which the hypoexponential stage rates, divided
// by theta, start.
double stage_offset(const ErlangAParams& p) { return p.service_capacity() / p.theta; }

}  // namespace

double fluid_wait(const ErlangAParams& p, double qt)
{
  validate(p);
  require_finite_nonnegative(qt, "qt");
  return std::log1p(p.theta * excess(p, qt) / p.service_capacity()) / p.theta;
}

MomentPair cond_wait_moments(const ErlangAParams& p, std::int64_t k)
{
  if (!(p.theta > 0.0)) {
    throw std::domain_error("cond_wait_moments: theta must be > 0");
  }
  validate(p);
  if (k < 0) {
    throw std::invalid_argument("cond_wait_moments: k must be >= 0");
  }
  const double a = stage_offset(p);
  const double end = a + static_cast<double>(k) + 1.0;
  return {(digamma(end) - digamma(a)) / p.theta,
          (trigamma(a) - trigamma(end)) / (p.theta * p.theta)};
}

double wait_mean_approx(const ErlangAParams& p, double qt)
{
  validate(p);
  require_finite_nonnegative(qt, "qt");
  const double x = excess(p, qt);
  if (x == 0.0) {
    return 0.0;
  }
  const double a = stage_offset(p);
  return (digamma(a + x) - digamma(a)) / p.theta;
}

double wait_var_approx(const ErlangAParams& p, double qt, double vt)
{
  validate(p);
  require_finite_nonnegative(qt, "qt");
  require_finite_nonnegative(vt, "vt");
  if (!(qt > p.c())) {
    return 0.0;
  }
  const double a = stage_offset(p);
  const double slope = trigamma(a + excess(p, qt));
  const double theta2 = p.theta * p.theta;
  return (trigamma(a) - slope) / theta2 + slope * slope * vt / theta2;
}

double wait_queue_cov_approx(const ErlangAParams& p, double qt, double vt, TaylorForm form)
{
  validate(p);
  require_finite_nonnegative(qt, "qt");
  require_finite_nonnegative(vt, "vt");
  if (!(qt > p.c())) {
    return 0.0;
  }
  const double cov = vt * trigamma(stage_offset(p) + excess(p, qt));
  return form == TaylorForm::chain_rule ? cov / p.theta : cov;
}

double overlap_mean_fluid(const ErlangAParams& p, double qt)
{
  return p.lambda / p.mu + p.lambda * fluid_wait(p, qt) + qt;
}

double overlap_mean_steady(const ErlangAParams& p)
{
  validate(p);
  const double offered = p.lambda / p.mu;
  if (!p.overloaded()) {
    return 2.0 * offered;
  }
  return offered + (p.lambda / p.theta) * std::log(p.lambda / p.service_capacity()) + p.c() +
         (p.lambda - p.service_capacity()) / p.theta;
}

double overlap_var_approx(const ErlangAParams& p, double qt, double vt, TaylorForm form)
{
  const double offered = p.lambda / p.mu;
  return offered + offered * offered + p.lambda * wait_mean_approx(p, qt) +
         p.lambda * p.lambda * wait_var_approx(p, qt, vt) + vt +
         2.0 * p.lambda * wait_queue_cov_approx(p, qt, vt, form);
}

double overlap_var_diffusion(const ErlangAParams& p, double qt, double vt)
{
  require_finite_nonnegative(vt, "vt");
  const double offered = p.lambda / p.mu;
  return offered + offered * offered + p.lambda * fluid_wait(p, qt) + vt;
}

double overlap_var_steady(const ErlangAParams& p)
{
  validate(p);
  const double offered = p.lambda / p.mu;
  if (!p.overloaded()) {
    return 2.0 * offered + offered * offered;
  }
  // Every (q(t) - c)^+ argument becomes lambda/theta at the fixed point.
  const double ratio = p.lambda / p.theta;
  const double a = stage_offset(p);
  const double slope = trigamma(ratio);
  return offered + offered * offered + ratio * (digamma(ratio) - digamma(a)) + ratio +
         ratio * ratio * ratio * slope * slope + ratio * ratio * (trigamma(a) - slope) +
         2.0 * p.lambda * ratio * slope;
}

}  // namespace erlanga
