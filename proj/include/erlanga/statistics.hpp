#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace erlanga {

/// Streaming mean and co-moment matrix of a small feature vector
/// (Welford update, Chan et al. pairwise merge).
template <int Dim>
class MomentAccumulator {
public:
  using Vector = Eigen::Matrix<double, Dim, 1>;
  using Matrix = Eigen::Matrix<double, Dim, Dim>;

  void push(const Vector& x)
  {
    ++count_;
    const Vector delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    comoment_.noalias() += delta * (x - mean_).transpose();
  }

  void merge(const MomentAccumulator& other)
  {
    if (other.count_ == 0) {
      return;
    }
    if (count_ == 0) {
      *this = other;
      return;
    }
    const auto na = static_cast<double>(count_);
    const auto nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const Vector delta = other.mean_ - mean_;
    mean_ += delta * (nb / n);
    comoment_ += other.comoment_ + delta * delta.transpose() * (na * nb / n);
    count_ += other.count_;
  }

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] const Vector& mean() const noexcept { return mean_; }
  /// Unbiased sample covariance; zero for fewer than two samples.
  [[nodiscard]] Matrix covariance() const
  {
    if (count_ < 2) {
      return Matrix::Zero();
    }
    return comoment_ / static_cast<double>(count_ - 1);
  }

private:
  std::uint64_t count_ = 0;
  Vector mean_ = Vector::Zero();
  Matrix comoment_ = Matrix::Zero();
};

/// Replication statistics of one observable at one time point.
///
/// Each replication contributes (m, s): a conditional mean and conditional
/// variance of the observable given that replication's information. Plain
/// samples are pushed with s = 0. The total variance is then
/// E[s] + Var[m] (law of total variance), with a delta-method standard error
/// built from the feature vector (m, s, m^2).
class ObservableStatistics {
public:
  void push_sample(double x) { push_conditional(x, 0.0); }
  void push_conditional(double mean, double variance)
  {
    accumulator_.push(Eigen::Vector3d(mean, variance, mean * mean));
  }
  void merge(const ObservableStatistics& other) { accumulator_.merge(other.accumulator_); }

  [[nodiscard]] std::uint64_t count() const noexcept { return accumulator_.count(); }
  [[nodiscard]] double mean() const { return accumulator_.mean()[0]; }
  [[nodiscard]] double mean_stderr() const;
  [[nodiscard]] double variance() const;
  [[nodiscard]] double variance_stderr() const;
  [[nodiscard]] double stddev() const;
  [[nodiscard]] double stddev_stderr() const;

private:
  MomentAccumulator<3> accumulator_;
};

}  // namespace erlanga
