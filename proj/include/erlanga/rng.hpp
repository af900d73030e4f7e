#pragma once

#include <cstdint>
#include <random>

namespace erlanga {

/// Deterministic pseudo-random stream for one replication.
///
/// The engine is seeded from (master_seed, index, substream) through
/// std::seed_seq, so a given triple always reproduces the same draws no
/// matter which thread or in which order replications run.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t index, std::uint32_t substream = 0);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Exp(rate) by inversion.
  double exponential(double rate);

  /// Poisson(mean): sequential inversion below mean 10, Hormann's
  /// transformed rejection (PTRS) above.
  std::uint64_t poisson(double mean);

private:
  std::mt19937_64 engine_;
};

}  // namespace erlanga
