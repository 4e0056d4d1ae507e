#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace graphon_lab {

/// Sampling proportional to nonnegative weights with O(log n) updates.
/// Internal nodes always hold left + right of their children as stored,
/// so repeated updates never accumulate drift.
class WeightedSampler {
 public:
  WeightedSampler() = default;

  explicit WeightedSampler(std::span<const double> weights) : count_(weights.size()) {
    leaves_ = 1;
    while (leaves_ < count_) leaves_ *= 2;
    tree_.assign(2 * leaves_, 0.0);
    for (std::size_t i = 0; i < count_; ++i) {
      if (!(weights[i] >= 0.0)) throw std::invalid_argument("WeightedSampler: negative weight");
      tree_[leaves_ + i] = weights[i];
    }
    for (std::size_t i = leaves_ - 1; i >= 1; --i) tree_[i] = tree_[2 * i] + tree_[2 * i + 1];
  }

  std::size_t size() const noexcept { return count_; }
  double total() const noexcept { return tree_.empty() ? 0.0 : tree_[1]; }
  double weight(std::size_t i) const noexcept { return tree_[leaves_ + i]; }

  void set(std::size_t i, double w) {
    if (!(w >= 0.0)) throw std::invalid_argument("WeightedSampler: negative weight");
    std::size_t node = leaves_ + i;
    tree_[node] = w;
    for (node /= 2; node >= 1; node /= 2) tree_[node] = tree_[2 * node] + tree_[2 * node + 1];
  }

  /// Index drawn with probability weight / total for u uniform in [0,1).
  /// Requires total() > 0. Never returns a zero-weight index.
  std::size_t sample(double u) const noexcept {
    double target = u * tree_[1];
    std::size_t node = 1;
    while (node < leaves_) {
      const double left = tree_[2 * node];
      const double right = tree_[2 * node + 1];
      if ((target < left && left > 0.0) || right <= 0.0) {
        node = 2 * node;
      } else {
        target -= left;
        node = 2 * node + 1;
      }
    }
    return node - leaves_;
  }

 private:
  std::size_t count_ = 0;
  std::size_t leaves_ = 0;
  std::vector<double> tree_;
};

}  // namespace graphon_lab
