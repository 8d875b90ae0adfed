#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mec/coupling.hpp"
#include "mec/marginal.hpp"

namespace mec {

inline constexpr std::size_t kDefaultOracleCap = 5;

/// Extreme points of the two-marginal transportation polytope.
struct VertexSet {
  std::vector<SparseCoupling> vertices;
  std::size_t best = 0;
  double best_entropy = 0.0;
};

/// Enumerates every vertex by exhaustive saturating assignment: pick an
/// open (row, column) cell, give it the smaller of the two remainders,
/// close whichever line(s) ran out, recurse. Vertices are returned in a
/// canonical order independent of the search order.
///
/// Throws DimensionError on unequal lengths and SizeError when n > n_cap.
VertexSet enumerate_vertices(const Marginal& p, const Marginal& q,
                             std::size_t n_cap = kDefaultOracleCap);

struct ExactCoupling {
  SparseCoupling coupling;
  double entropy = 0.0;
};

/// Global minimum entropy coupling of two small marginals.
ExactCoupling exact_min_entropy_2var(const Marginal& p, const Marginal& q,
                                     std::size_t n_cap = kDefaultOracleCap);

/// max_j H(X_j); a lower bound on every coupling's entropy.
double entropy_lower_bound(std::span<const Marginal> marginals);

/// True when the support, read as a bipartite row/column graph, has no
/// cycle. Holds for every vertex of a two-marginal polytope.
bool support_is_acyclic(const SparseCoupling& coupling);

}  // namespace mec
