#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mec/marginal.hpp"

namespace mec {

/// One cell of the joint tensor: a zero-based state per variable.
using IndexTuple = std::vector<std::size_t>;

/// Joint distribution stored by its nonzero cells only.
///
/// Entries keep both a lookup map and the order in which a solver produced
/// them. Masses must exceed kEpsZero; a tuple may only be added once.
class SparseCoupling {
 public:
  explicit SparseCoupling(std::vector<std::size_t> cardinalities);

  /// Throws DimensionError on a tuple of the wrong arity or an out-of-range
  /// state, DomainError on a non-positive mass or a repeated tuple.
  void add(IndexTuple tuple, double mass);

  std::size_t num_vars() const noexcept { return cardinalities_.size(); }
  const std::vector<std::size_t>& cardinalities() const noexcept {
    return cardinalities_;
  }
  const std::map<IndexTuple, double>& entries() const noexcept {
    return entries_;
  }
  const std::vector<std::pair<IndexTuple, double>>& assignment_order()
      const noexcept {
    return order_;
  }
  std::size_t size() const noexcept { return order_.size(); }

  /// Mass at `tuple`, zero when absent.
  double mass(const IndexTuple& tuple) const;
  double total_mass() const;
  std::vector<double> masses() const;
  double entropy() const;

 private:
  std::vector<std::size_t> cardinalities_;
  std::map<IndexTuple, double> entries_;
  std::vector<std::pair<IndexTuple, double>> order_;
};

/// Sums out every variable except `axis` (zero-based).
std::vector<double> marginalize(const SparseCoupling& c, std::size_t axis);

/// Largest absolute deviation between the coupling's marginals and the
/// expected ones. Throws DimensionError on a shape mismatch.
double max_marginal_error(const SparseCoupling& c,
                          std::span<const Marginal> expected);

}  // namespace mec
