#include "erlanga/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace erlanga {

Eigen::Vector2d mean_variance_rhs(const ErlangAParams& p, const Eigen::Vector2d& state, Regime regime)
{
  const double q = state[0];
  const double v = state[1];
  if (regime == Regime::below) {
    return {p.lambda - p.mu * q, p.lambda + p.mu * q - 2.0 * p.mu * v};
  }
  const double excess = q - p.c();
  const double capacity = p.service_capacity();
  return {p.lambda - capacity - p.theta * excess,
          p.lambda + capacity + p.theta * excess - 2.0 * p.theta * v};
}

Eigen::Vector2d rk4_step(const ErlangAParams& p, const Eigen::Vector2d& y, double h, Regime regime)
{
  const Eigen::Vector2d k1 = mean_variance_rhs(p, y, regime);
  const Eigen::Vector2d k2 = mean_variance_rhs(p, y + 0.5 * h * k1, regime);
  const Eigen::Vector2d k3 = mean_variance_rhs(p, y + 0.5 * h * k2, regime);
  const Eigen::Vector2d k4 = mean_variance_rhs(p, y + h * k3, regime);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

Regime initial_regime(const ErlangAParams& p, double q0)
{
  if (q0 > p.c()) {
    return Regime::above;
  }
  if (q0 < p.c()) {
    return Regime::below;
  }
  return p.overloaded() ? Regime::above : Regime::below;
}

// Only one switch can happen: below -> above when lambda > mu c, above ->
// below when lambda < mu c.
bool crossed(const ErlangAParams& p, Regime regime, double q)
{
  if (regime == Regime::below) {
    return p.overloaded() && q >= p.c();
  }
  return p.lambda < p.service_capacity() && q <= p.c();
}

class HybridIntegrator {
public:
  HybridIntegrator(const ErlangAParams& p, double q0, double v0)
      : p_(p), state_(q0, v0), regime_(initial_regime(p, q0))
  {
  }

  [[nodiscard]] const Eigen::Vector2d& state() const { return state_; }

  void advance(double h)
  {
    if (switched_) {
      state_ = rk4_step(p_, state_, h, regime_);
      return;
    }
    const Eigen::Vector2d trial = rk4_step(p_, state_, h, regime_);
    if (!crossed(p_, regime_, trial[0])) {
      state_ = trial;
      return;
    }
    // Bisect for the sub-step that lands q on c.
    double lo = 0.0;
    double hi = h;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        break;
      }
      if (crossed(p_, regime_, rk4_step(p_, state_, mid, regime_)[0])) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    Eigen::Vector2d at_crossing = rk4_step(p_, state_, hi, regime_);
    at_crossing[0] = p_.c();
    regime_ = regime_ == Regime::below ? Regime::above : Regime::below;
    switched_ = true;
    state_ = h - hi > 0.0 ? rk4_step(p_, at_crossing, h - hi, regime_) : at_crossing;
  }

private:
  ErlangAParams p_;
  Eigen::Vector2d state_;
  Regime regime_;
  bool switched_ = false;
};

}  // namespace

Eigen::Matrix2Xd integrate_mean_variance(const ErlangAParams& p, double q0, double v0,
                                         const TimeGrid& grid)
{
  validate(p);
  if (!std::isfinite(q0) || q0 < 0.0 || !std::isfinite(v0) || v0 < 0.0) {
    throw std::invalid_argument("initial (q0, v0) must be finite and >= 0");
  }
  const double max_step = 1e-3 / std::max(p.mu, p.theta);

  Eigen::Matrix2Xd out(2, grid.size());
  HybridIntegrator integrator(p, q0, v0);
  out.col(0) = integrator.state();
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    const double span = grid[i] - grid[i - 1];
    const auto steps = static_cast<long>(std::ceil(span / max_step));
    const double h = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      integrator.advance(h);
    }
    out.col(i) = integrator.state();
  }
  return out;
}

}  // namespace erlanga
