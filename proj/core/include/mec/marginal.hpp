#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mec {

/// A discrete probability distribution over states 0..n-1.
///
/// Construction validates that every entry is non-negative and that the
/// entries sum to one within kEpsSum. Instances are immutable.
class Marginal {
 public:
  explicit Marginal(std::vector<double> probs);
  Marginal(std::initializer_list<double> probs)
      : Marginal(std::vector<double>(probs)) {}

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  friend bool operator==(const Marginal&, const Marginal&) = default;

 private:
  std::vector<double> probs_;
};

/// Non-negative sub-probability vector, e.g. what remains of a marginal
/// after part of its mass has been assigned.
class ResidualVector {
 public:
  explicit ResidualVector(std::vector<double> masses);

  std::size_t size() const noexcept { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }
  std::span<const double> masses() const noexcept { return masses_; }
  double total() const noexcept { return total_; }

 private:
  std::vector<double> masses_;
  double total_ = 0.0;
};

/// -sum v_i log2 v_i with 0 log 0 = 0. The input need not sum to one.
/// Throws DomainError on a negative entry.
double extended_entropy(std::span<const double> v);
inline double extended_entropy(const Marginal& p) {
  return extended_entropy(p.probs());
}
inline double extended_entropy(const ResidualVector& l) {
  return extended_entropy(l.masses());
}

/// t log2(1/t), continuous at t = 0.
double t_log_inv_t(double t);

struct SortedMarginal {
  Marginal sorted;
  /// sorted[k] == original[perm[k]]; zero-based.
  std::vector<std::size_t> perm;
};

/// Non-increasing rearrangement. Ties keep ascending original index.
SortedMarginal sort_decreasing(const Marginal& p);

/// Half the L1 distance between the decreasing rearrangements of p and q.
double total_variation_sorted(const Marginal& p, const Marginal& q);

/// Throws DimensionError unless there are at least `min_count` marginals
/// and all share one length. Returns that common length.
std::size_t require_common_length(std::span<const Marginal> marginals,
                                  std::size_t min_count = 2);

}  // namespace mec
