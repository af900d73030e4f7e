#include "erlanga/simulator.hpp"

#include "erlanga/wait_overlap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace erlanga {

std::string_view to_string(OverlapMode mode)
{
  return mode == OverlapMode::direct_sampling ? "direct_sampling" : "conditional_moments";
}

OverlapMode parse_overlap_mode(std::string_view name)
{
  if (name == "direct_sampling" || name == "direct") {
    return OverlapMode::direct_sampling;
  }
  if (name == "conditional_moments" || name == "conditional") {
    return OverlapMode::conditional_moments;
  }
  throw std::invalid_argument("unknown overlap mode '" + std::string(name) + "'");
}

PathStatistics::PathStatistics(Eigen::Index grid_points)
{
  for (auto& series : per_observable_) {
    series.resize(static_cast<std::size_t>(grid_points));
  }
}

Eigen::Index PathStatistics::grid_points() const noexcept
{
  return static_cast<Eigen::Index>(per_observable_[0].size());
}

ObservableStatistics& PathStatistics::at(Observable what, Eigen::Index i)
{
  return per_observable_[static_cast<std::size_t>(what)].at(static_cast<std::size_t>(i));
}

const ObservableStatistics& PathStatistics::at(Observable what, Eigen::Index i) const
{
  return per_observable_[static_cast<std::size_t>(what)].at(static_cast<std::size_t>(i));
}

void PathStatistics::merge(const PathStatistics& other)
{
  if (other.grid_points() != grid_points()) {
    throw std::invalid_argument("PathStatistics::merge: grid size mismatch");
  }
  for (std::size_t o = 0; o < per_observable_.size(); ++o) {
    for (std::size_t i = 0; i < per_observable_[o].size(); ++i) {
      per_observable_[o][i].merge(other.per_observable_[o][i]);
    }
  }
}

std::uint64_t PathStatistics::replications() const
{
  return per_observable_[0].empty() ? 0 : per_observable_[0].front().count();
}

Eigen::VectorXi simulate_path(const ErlangAParams& p, int q0, const TimeGrid& grid, RngStream& rng)
{
  if (!(p.lambda >= 0.0) || !(p.mu > 0.0) || !(p.theta > 0.0) || p.servers < 1) {
    throw std::invalid_argument("simulate_path: invalid parameters");
  }
  if (q0 < 0) {
    throw std::invalid_argument("simulate_path: q0 must be >= 0");
  }
  Eigen::VectorXi path(grid.size());
  int queue = q0;
  double now = 0.0;
  Eigen::Index next_point = 0;
  const Eigen::Index points = grid.size();

  while (next_point < points) {
    const double serving = p.mu * std::min(queue, p.servers);
    const double abandoning = p.theta * std::max(queue - p.servers, 0);
    const double total = p.lambda + serving + abandoning;
    const double next_event =
        total > 0.0 ? now + rng.exponential(total) : std::numeric_limits<double>::infinity();
    while (next_point < points && grid[next_point] < next_event) {
      path[next_point++] = queue;
    }
    if (next_point == points) {
      break;
    }
    const double u = rng.uniform() * total;
    if (u < p.lambda) {
      ++queue;
    } else if (queue > 0) {
      --queue;  // service completion or abandonment
    }
    now = next_event;
  }
  return path;
}

double sample_wait(const ErlangAParams& p, int k_ahead, RngStream& rng)
{
  if (k_ahead < 0) {
    throw std::invalid_argument("sample_wait: k_ahead must be >= 0");
  }
  double wait = 0.0;
  for (int j = 0; j <= k_ahead; ++j) {
    wait += rng.exponential(p.service_capacity() + p.theta * j);
  }
  return wait;
}

double sample_virtual_wait(const ErlangAParams& p, int queue_length, RngStream& rng)
{
  return queue_length < p.servers ? 0.0 : sample_wait(p, queue_length - p.servers, rng);
}

VirtualCustomer sample_virtual_customer(const ErlangAParams& p, int queue_length, RngStream& rng)
{
  if (queue_length < 0) {
    throw std::invalid_argument("sample_overlap: queue length must be >= 0");
  }
  VirtualCustomer out;
  out.wait = sample_virtual_wait(p, queue_length, rng);
  const double service = rng.exponential(p.mu);
  out.overlap = static_cast<std::uint64_t>(queue_length) + rng.poisson(p.lambda * (out.wait + service));
  return out;
}

std::uint64_t sample_overlap(const ErlangAParams& p, int queue_length, RngStream& rng)
{
  return sample_virtual_customer(p, queue_length, rng).overlap;
}

namespace {

constexpr std::uint64_t block_size = 64;

void run_block(const SimulationConfig& cfg, std::uint64_t first, std::uint64_t last, PathStatistics& stats)
{
  const ErlangAParams& p = cfg.params;
  const double service_mean = 1.0 / p.mu;
  for (std::uint64_t r = first; r < last; ++r) {
    RngStream path_rng(cfg.master_seed, r, 0);
    RngStream customer_rng(cfg.master_seed, r, 1);
    const Eigen::VectorXi path = simulate_path(p, cfg.q0, cfg.grid, path_rng);
    for (Eigen::Index i = 0; i < path.size(); ++i) {
      const int q = path[i];
      stats.at(Observable::queue, i).push_sample(q);
      if (cfg.overlap_mode == OverlapMode::direct_sampling) {
        const VirtualCustomer vc = sample_virtual_customer(p, q, customer_rng);
        stats.at(Observable::wait, i).push_sample(vc.wait);
        stats.at(Observable::overlap, i).push_sample(static_cast<double>(vc.overlap));
      } else {
        const MomentPair w = q < p.servers ? MomentPair{} : cond_wait_moments(p, q - p.servers);
        const double exposure = service_mean + w.mean;
        stats.at(Observable::wait, i).push_conditional(w.mean, w.variance);
        stats.at(Observable::overlap, i)
            .push_conditional(q + p.lambda * exposure,
                              p.lambda * exposure +
                                  p.lambda * p.lambda * (service_mean * service_mean + w.variance));
      }
    }
  }
}

}  // namespace

PathStatistics run_experiment(const SimulationConfig& cfg, unsigned workers)
{
  validate(cfg.params);
  if (cfg.replications == 0) {
    throw std::invalid_argument("replications must be >= 1");
  }
  if (cfg.q0 < 0) {
    throw std::invalid_argument("q0 must be >= 0");
  }
  const std::uint64_t blocks = (cfg.replications + block_size - 1) / block_size;
  std::vector<PathStatistics> partial(static_cast<std::size_t>(blocks), PathStatistics(cfg.grid.size()));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      try {
        run_block(cfg, b * block_size, std::min(cfg.replications, (b + 1) * block_size),
                  partial[static_cast<std::size_t>(b)]);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        failure = std::current_exception();
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(work);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  PathStatistics total(cfg.grid.size());
  for (const auto& block : partial) {
    total.merge(block);
  }
  return total;
}

}  // namespace erlanga
