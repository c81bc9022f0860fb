#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace hsm {

/// Neumaier's variant of compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }

  double value() const { return sum_ + compensation_; }

  friend bool operator==(const CompensatedSum&, const CompensatedSum&) = default;

 private:
  double sum_ = 0;
  double compensation_ = 0;
};

/// Streaming power sums of a scalar sample, enough for raw-moment estimates
/// of orders 1..K and their standard errors (sums run to order 2K).
class SampleAccumulator {
 public:
  SampleAccumulator() = default;
  explicit SampleAccumulator(int max_order);

  void add(double x);
  void record_separability(bool separable, int negative_eigenvalues);
  /// Appends another accumulator; merging in a fixed order keeps the result
  /// independent of how chunks were scheduled.
  void merge(const SampleAccumulator& other);

  int max_order() const { return max_order_; }
  std::int64_t count() const { return count_; }

  double estimate(int order) const;
  double std_error(int order) const;

  std::int64_t separability_tested() const { return sep_tested_; }
  std::int64_t separable_count() const { return sep_count_; }
  std::int64_t multiple_negative_count() const { return multi_negative_; }
  double separable_fraction() const;
  double separable_std_error() const;

  // Schedule that produced the sums; filled in by the estimation driver.
  std::uint64_t seed = 0;
  std::int64_t chunk_size = 0;
  std::int64_t chunks = 0;

  friend bool operator==(const SampleAccumulator&, const SampleAccumulator&) = default;

 private:
  int max_order_ = 0;
  std::int64_t count_ = 0;
  std::vector<CompensatedSum> power_sums_;  // index k-1 holds sum x^k, k = 1..2K
  std::int64_t sep_tested_ = 0;
  std::int64_t sep_count_ = 0;
  std::int64_t multi_negative_ = 0;
};

}  // namespace hsm
