#include "mec/generate.hpp"

#include <random>

#include "mec/errors.hpp"

namespace mec {

std::vector<Marginal> random_dirichlet_marginals(std::size_t m, std::size_t n,
                                                 double concentration,
                                                 std::uint64_t seed) {
  if (m == 0 || n == 0) throw DimensionError("random marginals: empty shape");
  if (!(concentration > 0.0)) {
    throw DomainError("random marginals: concentration must be positive");
  }
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<Marginal> out;
  out.reserve(m);
  while (out.size() < m) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) sum += (x = gamma(rng));
    if (!(sum > 0.0)) continue;
    for (double& x : v) x /= sum;
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace mec
