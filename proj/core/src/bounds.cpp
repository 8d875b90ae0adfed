#include "mec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mec/errors.hpp"
#include "mec/tolerances.hpp"

namespace mec {

void BoundReport::attach_exact_optimum(double h_star) {
  exact_optimum = h_star;
  absolute_upper_bound = h_star + slack;
  if (achieved) tightness = *achieved - h_star;
}

BoundReport bound_report(std::span<const Marginal> marginals,
                         std::optional<double> achieved) {
  const std::size_t n = require_common_length(marginals);
  const std::size_t m = marginals.size();

  BoundReport rep;
  rep.m = m;
  rep.achieved = achieved;
  double sum_spread = 0.0;
  for (const auto& p : marginals) {
    rep.sorted_marginals.push_back(sort_decreasing(p).sorted);
    rep.lower_bound = std::max(rep.lower_bound, extended_entropy(p));
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    sum_spread = std::max(sum_spread,
                          std::abs(s - std::accumulate(marginals[0].begin(),
                                                       marginals[0].end(), 0.0)));
  }

  std::vector<double> pmin(n);
  for (std::size_t i = 0; i < n; ++i) {
    pmin[i] = rep.sorted_marginals[0][i];
    for (const auto& s : rep.sorted_marginals) pmin[i] = std::min(pmin[i], s[i]);
  }
  rep.p_min = ResidualVector(pmin);
  rep.phase1_entropy = extended_entropy(rep.p_min);

  for (const auto& s : rep.sorted_marginals) {
    std::vector<double> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = s[i] - pmin[i];
    rep.residuals.emplace_back(std::move(l));
    rep.h_l.push_back(extended_entropy(rep.residuals.back()));
  }

  // Every residual total equals 1 - sum(p_min); T is read off the first.
  rep.T = rep.residuals.front().total();
  for (const auto& l : rep.residuals) {
    if (std::abs(l.total() - rep.T) > kEpsSum + sum_spread) {
      throw InvariantViolation("bound_report: residual totals disagree");
    }
  }

  const double h_sum = std::accumulate(rep.h_l.begin(), rep.h_l.end(), 0.0);
  const double h_max = *std::max_element(rep.h_l.begin(), rep.h_l.end());
  if (m == 2) {
    if (std::abs(rep.T - total_variation_sorted(marginals[0], marginals[1])) >
        kEpsSum + sum_spread) {
      throw InvariantViolation(
          "bound_report: T disagrees with the sorted total variation");
    }
    rep.slack = 1.0 - t_log_inv_t(rep.T) + std::min(rep.h_l[0], rep.h_l[1]);
  } else {
    rep.slack = 1.0 - static_cast<double>(m - 1) * t_log_inv_t(rep.T) + h_sum -
                h_max;
  }
  rep.upper_bound = rep.lower_bound + rep.slack;
  return rep;
}

double DenseTensor::at(std::span<const std::size_t> index) const {
  if (index.size() != shape.size()) {
    throw DimensionError("tensor: index arity mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (index[k] >= shape[k]) throw DimensionError("tensor: index out of range");
    flat = flat * shape[k] + index[k];
  }
  return values[flat];
}

std::vector<double> DenseTensor::marginal(std::size_t axis) const {
  if (axis >= shape.size()) throw DimensionError("tensor: axis out of range");
  std::size_t stride = 1;
  for (std::size_t k = axis + 1; k < shape.size(); ++k) stride *= shape[k];
  std::vector<double> out(shape[axis], 0.0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    out[(flat / stride) % shape[axis]] += values[flat];
  }
  return out;
}

double DenseTensor::entropy() const { return extended_entropy(values); }

DenseTensor outer_product_coupling(std::span<const ResidualVector> residuals) {
  if (residuals.empty()) throw DimensionError("outer product: no residuals");
  const double T = residuals.front().total();
  for (const auto& l : residuals) {
    if (std::abs(l.total() - T) > kEpsSum) {
      throw DomainError("outer product: residual totals differ");
    }
  }
  DenseTensor r;
  if (T <= 0.0) return r;

  std::size_t count = 1;
  for (const auto& l : residuals) {
    r.shape.push_back(l.size());
    count *= l.size();
  }
  const double scale =
      std::pow(T, static_cast<double>(residuals.size() - 1));
  r.values.assign(count, 0.0);
  std::vector<std::size_t> idx(residuals.size(), 0);
  for (std::size_t flat = 0; flat < count; ++flat) {
    double prod = 1.0;
    for (std::size_t k = 0; k < idx.size(); ++k) prod *= residuals[k][idx[k]];
    r.values[flat] = prod / scale;
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < r.shape[k]) break;
      idx[k] = 0;
    }
  }
  return r;
}

EntropyIdentity outer_product_entropy_identity(
    std::span<const ResidualVector> residuals) {
  const DenseTensor r = outer_product_coupling(residuals);
  EntropyIdentity id;
  id.lhs = r.entropy();
  const double T = residuals.front().total();
  for (const auto& l : residuals) id.rhs += extended_entropy(l);
  // (m-1) T log2 T, zero at T = 0.
  id.rhs -= static_cast<double>(residuals.size() - 1) * t_log_inv_t(T);
  return id;
}

SpecialFamily special_family(std::size_t n, double alpha) {
  if (n == 0 || n % 2 != 0) {
    throw DomainError("special_family: n must be a positive even integer");
  }
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw DomainError("special_family: alpha must lie in (1, 2)");
  }
  const double nd = static_cast<double>(n);
  std::vector<double> uniform(n, 1.0 / nd);
  std::vector<double> skewed(n);
  for (std::size_t i = 0; i < n; ++i) {
    skewed[i] = (i < n / 2 ? alpha : 2.0 - alpha) / nd;
  }

  SpecialFamily f;
  f.n = n;
  f.alpha = alpha;
  f.uniform = Marginal(std::move(uniform));
  f.skewed = Marginal(std::move(skewed));

  const double eps = alpha - 1.0;
  const double rest = 2.0 - alpha;
  f.predicted_greedy_entropy = std::log2(nd) - 0.5 * eps * std::log2(eps) -
                               0.5 * rest * std::log2(rest);
  f.predicted_h2 = std::log2(nd) - 0.5 * alpha * std::log2(alpha) -
                   0.5 * rest * std::log2(rest);
  f.predicted_gap =
      0.5 * std::log2(1.0 + eps) + 0.5 * eps * std::log2(1.0 + 1.0 / eps);
  f.predicted_residual_entropy = 0.5 * eps * std::log2(nd / eps);
  return f;
}

}  // namespace mec
