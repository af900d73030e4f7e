#pragma once

#include <string>

namespace erlanga {

/// Static M/M/c+M model: Poisson arrivals at rate lambda, c servers working
/// at rate mu each, exponential patience with abandonment rate theta.
struct ErlangAParams {
  double lambda = 0.0;
  double mu = 0.0;
  double theta = 0.0;
  int servers = 1;

  [[nodiscard]] double c() const noexcept { return static_cast<double>(servers); }
  [[nodiscard]] double service_capacity() const noexcept { return mu * c(); }
  [[nodiscard]] bool overloaded() const noexcept { return lambda > service_capacity(); }
};

/// Throws std::invalid_argument unless all rates are finite and > 0 and c >= 1.
void validate(const ErlangAParams& params);

std::string describe(const ErlangAParams& params);

}  // namespace erlanga
