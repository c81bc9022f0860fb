#include "hsm/accumulator.hpp"

#include <stdexcept>
#include <string>

namespace hsm {

SampleAccumulator::SampleAccumulator(int max_order)
    : max_order_(max_order), power_sums_(static_cast<std::size_t>(2 * max_order)) {
  if (max_order < 1) throw std::invalid_argument("SampleAccumulator: max_order must be positive");
}

void SampleAccumulator::add(double x) {
  double p = 1;
  for (auto& s : power_sums_) {
    p *= x;
    s.add(p);
  }
  ++count_;
}

void SampleAccumulator::record_separability(bool separable, int negative_eigenvalues) {
  ++sep_tested_;
  if (separable) ++sep_count_;
  if (negative_eigenvalues >= 2) ++multi_negative_;
}

void SampleAccumulator::merge(const SampleAccumulator& other) {
  if (other.max_order_ != max_order_) throw std::invalid_argument("SampleAccumulator: order mismatch");
  for (std::size_t k = 0; k < power_sums_.size(); ++k) power_sums_[k].merge(other.power_sums_[k]);
  count_ += other.count_;
  sep_tested_ += other.sep_tested_;
  sep_count_ += other.sep_count_;
  multi_negative_ += other.multi_negative_;
}

double SampleAccumulator::estimate(int order) const {
  if (order < 1 || order > max_order_) {
    throw std::out_of_range("estimate: order " + std::to_string(order) + " not accumulated");
  }
  if (count_ == 0) throw std::domain_error("estimate: no samples");
  return power_sums_[static_cast<std::size_t>(order - 1)].value() / double(count_);
}

double SampleAccumulator::std_error(int order) const {
  const double mean = estimate(order);
  if (count_ < 2) return 0;
  const double n = double(count_);
  const double second = power_sums_[static_cast<std::size_t>(2 * order - 1)].value() / n;
  const double variance = std::max(0.0, (second - mean * mean) * n / (n - 1));
  return std::sqrt(variance / n);
}

double SampleAccumulator::separable_fraction() const {
  if (sep_tested_ == 0) throw std::domain_error("separable_fraction: nothing tested");
  return double(sep_count_) / double(sep_tested_);
}

double SampleAccumulator::separable_std_error() const {
  const double p = separable_fraction();
  return std::sqrt(p * (1 - p) / double(sep_tested_));
}

}  // namespace hsm
