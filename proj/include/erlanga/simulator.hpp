#pragma once

#include "erlanga/params.hpp"
#include "erlanga/rng.hpp"
#include "erlanga/statistics.hpp"
#include "erlanga/time_grid.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace erlanga {

enum class OverlapMode { direct_sampling, conditional_moments };

std::string_view to_string(OverlapMode mode);
/// Throws std::invalid_argument for unknown names.
OverlapMode parse_overlap_mode(std::string_view name);

enum class Observable { queue = 0, wait = 1, overlap = 2 };

struct SimulationConfig {
  ErlangAParams params;
  int q0 = 0;
  TimeGrid grid = TimeGrid::uniform(20.0, 0.1);
  std::uint64_t replications = 2000;
  std::uint64_t master_seed = 1;
  OverlapMode overlap_mode = OverlapMode::direct_sampling;
};

/// Per-grid-point replication statistics of Q(t), W(t) and O(t).
class PathStatistics {
public:
  explicit PathStatistics(Eigen::Index grid_points = 0);

  [[nodiscard]] Eigen::Index grid_points() const noexcept;
  [[nodiscard]] ObservableStatistics& at(Observable what, Eigen::Index i);
  [[nodiscard]] const ObservableStatistics& at(Observable what, Eigen::Index i) const;
  /// Appends another block of replications; both must share the grid.
  void merge(const PathStatistics& other);
  [[nodiscard]] std::uint64_t replications() const;

private:
  std::array<std::vector<ObservableStatistics>, 3> per_observable_;
};

/// Exact next-event simulation of the birth-death queue, sampled at the grid
/// points (right-continuous). Total event rate is
/// lambda + mu (Q ^ c) + theta (Q - c)^+. lambda == 0 is accepted here.
Eigen::VectorXi simulate_path(const ErlangAParams& params, int q0, const TimeGrid& grid,
                              RngStream& rng);

/// Hypoexponential wait: sum_{j=0}^{k_ahead} Exp(mu c + theta j).
double sample_wait(const ErlangAParams& params, int k_ahead, RngStream& rng);

/// Wait of a non-abandoning arrival seeing queue length q: zero below c,
/// otherwise sample_wait with k_ahead = q - c.
double sample_virtual_wait(const ErlangAParams& params, int queue_length, RngStream& rng);

/// One virtual customer arriving when Q = queue_length.
struct VirtualCustomer {
  double wait = 0.0;
  std::uint64_t overlap = 0;
};

/// O = Q + Poisson(lambda (W + S)), S ~ Exp(mu); arrivals after t are
/// independent of (W, S).
VirtualCustomer sample_virtual_customer(const ErlangAParams& params, int queue_length,
                                        RngStream& rng);
std::uint64_t sample_overlap(const ErlangAParams& params, int queue_length, RngStream& rng);

/// Runs all replications. Replication r uses RngStream(master_seed, r, 0)
/// for its path and RngStream(master_seed, r, 1) for virtual customers.
/// Replications are grouped in fixed blocks whose statistics are merged in
/// block order, so the result does not depend on `workers`.
PathStatistics run_experiment(const SimulationConfig& config, unsigned workers = 1);

}  // namespace erlanga
