#include "mec/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mec/errors.hpp"
#include "mec/tolerances.hpp"

namespace mec {

SparseCoupling::SparseCoupling(std::vector<std::size_t> cardinalities)
    : cardinalities_(std::move(cardinalities)) {
  if (cardinalities_.empty()) {
    throw DimensionError("coupling: needs at least one variable");
  }
}

void SparseCoupling::add(IndexTuple tuple, double mass) {
  if (tuple.size() != cardinalities_.size()) {
    throw DimensionError("coupling: tuple arity " +
                         std::to_string(tuple.size()) + ", expected " +
                         std::to_string(cardinalities_.size()));
  }
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] >= cardinalities_[k]) {
      throw DimensionError("coupling: state out of range on axis " +
                           std::to_string(k + 1));
    }
  }
  if (!(mass > kEpsZero)) {
    throw DomainError("coupling: mass must exceed eps_zero");
  }
  auto [it, inserted] = entries_.emplace(tuple, mass);
  if (!inserted) throw DomainError("coupling: repeated tuple");
  order_.emplace_back(std::move(tuple), mass);
}

double SparseCoupling::mass(const IndexTuple& tuple) const {
  auto it = entries_.find(tuple);
  return it == entries_.end() ? 0.0 : it->second;
}

double SparseCoupling::total_mass() const {
  double t = 0.0;
  for (const auto& [tuple, m] : order_) t += m;
  return t;
}

std::vector<double> SparseCoupling::masses() const {
  std::vector<double> out;
  out.reserve(order_.size());
  for (const auto& [tuple, m] : order_) out.push_back(m);
  return out;
}

double SparseCoupling::entropy() const {
  double h = 0.0;
  for (const auto& [tuple, m] : order_) h -= m * std::log2(m);
  return h;
}

std::vector<double> marginalize(const SparseCoupling& c, std::size_t axis) {
  if (axis >= c.num_vars()) {
    throw DimensionError("marginalize: axis " + std::to_string(axis + 1) +
                         " out of range");
  }
  std::vector<double> out(c.cardinalities()[axis], 0.0);
  for (const auto& [tuple, m] : c.assignment_order()) out[tuple[axis]] += m;
  return out;
}

double max_marginal_error(const SparseCoupling& c,
                          std::span<const Marginal> expected) {
  if (expected.size() != c.num_vars()) {
    throw DimensionError("max_marginal_error: variable count mismatch");
  }
  double worst = 0.0;
  for (std::size_t axis = 0; axis < expected.size(); ++axis) {
    const auto got = marginalize(c, axis);
    if (got.size() != expected[axis].size()) {
      throw DimensionError("max_marginal_error: cardinality mismatch");
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      worst = std::max(worst, std::abs(got[i] - expected[axis][i]));
    }
  }
  return worst;
}

}  // namespace mec
