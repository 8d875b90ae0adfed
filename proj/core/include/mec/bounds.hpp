#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mec/marginal.hpp"

namespace mec {

/// Additive approximation guarantee for the two-phase greedy solver.
///
/// All marginals are sorted decreasingly, p_min is their pointwise minimum
/// and residual_j = sorted_j - p_min. Every residual has the same total T.
/// The guarantee reads
///
///   H(greedy) <= H* + slack
///   slack = 1 - (m-1) T log2(1/T) + sum_j h(l_j) - max_j h(l_j)
///
/// which for m = 2 is 1 - T log2(1/T) + min(h(l_1), h(l_2)). Since
/// H* >= max_j H(X_j), `upper_bound` = lower_bound + slack is an absolute
/// bound on the greedy entropy.
struct BoundReport {
  std::size_t m = 0;
  std::vector<Marginal> sorted_marginals;
  ResidualVector p_min{std::vector<double>{}};
  std::vector<ResidualVector> residuals;
  double T = 0.0;
  std::vector<double> h_l;
  double phase1_entropy = 0.0;  // h(p_min)
  double lower_bound = 0.0;     // max_j H(X_j)
  double slack = 0.0;
  double upper_bound = 0.0;
  std::optional<double> achieved;

  /// Filled in when an exact optimum is known (two marginals, small n).
  std::optional<double> exact_optimum;
  std::optional<double> absolute_upper_bound;  // exact_optimum + slack
  std::optional<double> tightness;             // achieved - exact_optimum

  void attach_exact_optimum(double h_star);
};

/// Throws DimensionError on fewer than two marginals or ragged lengths.
BoundReport bound_report(std::span<const Marginal> marginals,
                         std::optional<double> achieved = std::nullopt);

/// Dense row-major tensor; the last axis varies fastest.
struct DenseTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  double at(std::span<const std::size_t> index) const;
  std::vector<double> marginal(std::size_t axis) const;
  double entropy() const;
};

/// R(i_1..i_m) = prod_j l_j(i_j) / T^(m-1). Its axis-j marginal is l_j.
/// Throws DomainError when totals differ by more than kEpsSum; returns an
/// empty tensor when T is zero.
DenseTensor outer_product_coupling(std::span<const ResidualVector> residuals);

struct EntropyIdentity {
  double lhs = 0.0;  // h(outer product)
  double rhs = 0.0;  // sum_j h(l_j) + (m-1) T log2 T
};

EntropyIdentity outer_product_entropy_identity(
    std::span<const ResidualVector> residuals);

/// X_1 uniform on n states, X_2 with alpha/n on the first n/2 states and
/// (2 - alpha)/n on the rest, together with the closed-form entropies of
/// the two-phase greedy coupling.
struct SpecialFamily {
  std::size_t n = 0;
  double alpha = 0.0;
  Marginal uniform{1.0};
  Marginal skewed{1.0};
  double predicted_greedy_entropy = 0.0;
  double predicted_h2 = 0.0;
  /// predicted_greedy_entropy - predicted_h2 written in eps = alpha - 1.
  double predicted_gap = 0.0;
  /// h(l_1) = h(l_2) = ((alpha-1)/2) log2(n/(alpha-1)).
  double predicted_residual_entropy = 0.0;
};

/// Throws DomainError unless n is even and positive and 1 < alpha < 2.
SpecialFamily special_family(std::size_t n, double alpha);

}  // namespace mec
