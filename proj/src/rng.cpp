#include "erlanga/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace erlanga {

namespace {

std::seed_seq make_seed(std::uint64_t master, std::uint64_t index, std::uint32_t substream)
{
  return std::seed_seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                       static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                       substream, 0x45524c41u /* "ERLA" */};
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t index, std::uint32_t substream)
{
  auto seq = make_seed(master_seed, index, substream);
  engine_.seed(seq);
}

double RngStream::uniform()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double rate)
{
  if (!(rate > 0.0)) {
    throw std::invalid_argument("exponential: rate must be > 0");
  }
  return -std::log1p(-uniform()) / rate;
}

std::uint64_t RngStream::poisson(double mean)
{
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean < 10.0) {
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      const double next = cdf + p;
      if (next == cdf) {
        break;  // remaining mass below rounding
      }
      cdf = next;
    }
    return k;
  }

  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace erlanga
