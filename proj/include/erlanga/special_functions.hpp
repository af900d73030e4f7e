#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>

namespace erlanga {

namespace detail {

template <std::floating_point Scalar>
void require_positive_argument(Scalar x, const char* name)
{
  if (!std::isfinite(x) || !(x > Scalar(0))) {
    throw std::domain_error(std::string(name) + ": argument must be finite and > 0, got " +
                            std::to_string(static_cast<double>(x)));
  }
}

// Below this the argument is shifted up by the recurrence before the
// asymptotic expansion is applied.
template <std::floating_point Scalar>
inline constexpr Scalar asymptotic_threshold = Scalar(10);

}  // namespace detail

/// Digamma function psi(x) = d/dx log Gamma(x) for x > 0.
///
/// Uses psi(x) = psi(x + n) - sum_{j<n} 1/(x + j) to move the argument to
/// x + n >= 10, then the Bernoulli asymptotic series
///   psi(y) ~ log y - 1/(2y) - sum_k B_{2k} / (2k y^{2k}),
/// truncated after the y^-14 term (remainder below 1e-16 at y = 10).
template <std::floating_point Scalar>
Scalar digamma(Scalar x)
{
  detail::require_positive_argument(x, "digamma");

  Scalar shift_sum = 0;
  Scalar y = x;
  while (y < detail::asymptotic_threshold<Scalar>) {
    shift_sum += Scalar(1) / y;
    y += Scalar(1);
  }

  const Scalar inv = Scalar(1) / y;
  const Scalar inv2 = inv * inv;
  // Horner form of sum B_{2k}/(2k) y^{-2k}, k = 1..7
  const Scalar series =
      inv2 * (Scalar(1) / 12 -
              inv2 * (Scalar(1) / 120 -
                      inv2 * (Scalar(1) / 252 -
                              inv2 * (Scalar(1) / 240 -
                                      inv2 * (Scalar(1) / 132 -
                                              inv2 * (Scalar(691) / 32760 - inv2 * (Scalar(1) / 12)))))));
  return std::log(y) - Scalar(0.5) * inv - series - shift_sum;
}

/// Trigamma function psi'(x) for x > 0.
///
/// Same strategy as digamma: psi'(x) = psi'(x + n) + sum_{j<n} 1/(x + j)^2,
/// then psi'(y) ~ 1/y + 1/(2y^2) + sum_k B_{2k} / y^{2k+1}. The shift terms
/// are accumulated largest-index first.
template <std::floating_point Scalar>
Scalar trigamma(Scalar x)
{
  detail::require_positive_argument(x, "trigamma");

  int shifts = 0;
  Scalar y = x;
  while (y < detail::asymptotic_threshold<Scalar>) {
    y += Scalar(1);
    ++shifts;
  }

  const Scalar inv = Scalar(1) / y;
  const Scalar inv2 = inv * inv;
  const Scalar series =
      inv2 * inv *
      (Scalar(1) / 6 -
       inv2 * (Scalar(1) / 30 -
               inv2 * (Scalar(1) / 42 -
                       inv2 * (Scalar(1) / 30 -
                               inv2 * (Scalar(5) / 66 -
                                       inv2 * (Scalar(691) / 2730 - inv2 * (Scalar(7) / 6)))))));
  Scalar value = inv + Scalar(0.5) * inv2 + series;
  for (int j = shifts - 1; j >= 0; --j) {
    const Scalar z = x + Scalar(j);
    value += Scalar(1) / (z * z);
  }
  return value;
}

}  // namespace erlanga
