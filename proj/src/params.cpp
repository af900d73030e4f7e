#include "erlanga/params.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace erlanga {

namespace {

void require_rate(double value, const char* name)
{
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

void validate(const ErlangAParams& params)
{
  require_rate(params.lambda, "lambda");
  require_rate(params.mu, "mu");
  require_rate(params.theta, "theta");
  if (params.servers < 1) {
    throw std::invalid_argument("servers must be >= 1");
  }
}

std::string describe(const ErlangAParams& params)
{
  char buf[160];
  std::snprintf(buf, sizeof buf, "lambda=%.10g mu=%.10g theta=%.10g servers=%d", params.lambda,
                params.mu, params.theta, params.servers);
  return buf;
}

}  // namespace erlanga
