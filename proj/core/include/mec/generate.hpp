#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mec/marginal.hpp"

namespace mec {

/// m marginals over n states, each drawn from a symmetric Dirichlet with
/// the given concentration. Deterministic for a fixed seed.
std::vector<Marginal> random_dirichlet_marginals(std::size_t m, std::size_t n,
                                                 double concentration,
                                                 std::uint64_t seed);

}  // namespace mec
