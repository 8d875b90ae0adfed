#include "mec/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mec/errors.hpp"
#include "mec/tolerances.hpp"

namespace mec {

namespace {

double checked_sum(std::span<const double> v, const char* what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i])) {
      throw DomainError(std::string(what) + ": entry " + std::to_string(i + 1) +
                        " is negative or not finite");
    }
    sum += v[i];
  }
  return sum;
}

}  // namespace

Marginal::Marginal(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DimensionError("marginal: no states");
  const double sum = checked_sum(probs_, "marginal");
  if (std::abs(sum - 1.0) > kEpsSum) {
    throw DomainError("marginal: entries sum to " + std::to_string(sum) +
                      ", expected 1");
  }
}

ResidualVector::ResidualVector(std::vector<double> masses)
    : masses_(std::move(masses)) {
  total_ = checked_sum(masses_, "residual vector");
}

double extended_entropy(std::span<const double> v) {
  double h = 0.0;
  for (double x : v) {
    if (x < 0.0 || std::isnan(x)) {
      throw DomainError("extended_entropy: negative entry");
    }
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double t_log_inv_t(double t) {
  if (t < 0.0) throw DomainError("t_log_inv_t: negative argument");
  return t > 0.0 ? -t * std::log2(t) : 0.0;
}

SortedMarginal sort_decreasing(const Marginal& p) {
  std::vector<std::size_t> perm(p.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  std::vector<double> sorted(p.size());
  for (std::size_t k = 0; k < perm.size(); ++k) sorted[k] = p[perm[k]];
  return {Marginal(std::move(sorted)), std::move(perm)};
}

double total_variation_sorted(const Marginal& p, const Marginal& q) {
  if (p.size() != q.size()) {
    throw DimensionError("total_variation_sorted: length mismatch");
  }
  const auto ps = sort_decreasing(p).sorted;
  const auto qs = sort_decreasing(q).sorted;
  double acc = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) acc += std::abs(ps[i] - qs[i]);
  return 0.5 * acc;
}

std::size_t require_common_length(std::span<const Marginal> marginals,
                                  std::size_t min_count) {
  if (marginals.size() < min_count) {
    throw DimensionError("need at least " + std::to_string(min_count) +
                         " marginals, got " +
                         std::to_string(marginals.size()));
  }
  if (marginals.empty()) return 0;
  const std::size_t n = marginals.front().size();
  for (const auto& p : marginals) {
    if (p.size() != n) {
      throw DimensionError("dimension mismatch: marginals have lengths " +
                           std::to_string(n) + " and " +
                           std::to_string(p.size()));
    }
  }
  return n;
}

}  // namespace mec
