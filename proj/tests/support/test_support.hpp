#pragma once

// Test-only helpers: random instance corpora and reference computations that
// deliberately avoid the library's own code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "mec/marginal.hpp"

namespace mec::testing {

inline std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n,
                                     double concentration = 1.0) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> v(n);
  double sum = 0.0;
  do {
    sum = 0.0;
    for (double& x : v) sum += (x = gamma(rng));
  } while (!(sum > 0.0));
  for (double& x : v) x /= sum;
  return v;
}

inline std::vector<Marginal> random_instance(std::mt19937_64& rng,
                                             std::size_t m, std::size_t n) {
  std::vector<Marginal> out;
  for (std::size_t j = 0; j < m; ++j) out.emplace_back(dirichlet(rng, n));
  return out;
}

/// Literal transcription of the repeated update loop: linear-scan argmax with
/// lowest index on ties, stop once the first residual's total is negligible.
/// Returns (tuple, mass) in assignment order.
inline std::vector<std::pair<std::vector<std::size_t>, double>>
reference_greedy(const std::vector<Marginal>& marginals) {
  std::vector<std::vector<double>> p;
  for (const auto& mg : marginals) p.emplace_back(mg.begin(), mg.end());
  std::vector<std::pair<std::vector<std::size_t>, double>> out;
  auto r = [&] { return std::accumulate(p[0].begin(), p[0].end(), 0.0); };
  while (r() > 1e-10) {
    std::vector<std::size_t> idx(p.size());
    double u = 2.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      idx[j] = static_cast<std::size_t>(
          std::max_element(p[j].begin(), p[j].end()) - p[j].begin());
      u = std::min(u, p[j][idx[j]]);
    }
    if (u <= 0.0) break;
    for (std::size_t j = 0; j < p.size(); ++j) {
      p[j][idx[j]] -= u;
      if (p[j][idx[j]] < 1e-12) p[j][idx[j]] = 0.0;
    }
    out.emplace_back(idx, u);
  }
  return out;
}

inline double plain_entropy(const std::vector<double>& v) {
  double h = 0.0;
  for (double x : v) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

/// Vertices of the 2-marginal transportation polytope by brute force over
/// every (2n-1)-cell subset that forms a spanning tree of K_{n,n}: solve the
/// tree by leaf peeling and keep the nonnegative solutions. Returns each
/// vertex as a map from (row, col) to mass, nonzero cells only, deduplicated.
inline std::vector<std::map<std::pair<std::size_t, std::size_t>, double>>
spanning_tree_vertices(const std::vector<double>& p,
                       const std::vector<double>& q) {
  const std::size_t n = p.size();
  const std::size_t cells = n * n;
  const std::size_t k = 2 * n - 1;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, double>> out;

  std::vector<std::size_t> pick(k);
  std::function<void(std::size_t, std::size_t)> choose =
      [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
          std::vector<double> row = p;
          std::vector<double> col = q;
          std::vector<bool> used(k, false);
          std::map<std::pair<std::size_t, std::size_t>, double> sol;
          for (std::size_t round = 0; round < k; ++round) {
            bool progressed = false;
            for (std::size_t e = 0; e < k && !progressed; ++e) {
              if (used[e]) continue;
              const std::size_t r = pick[e] / n;
              const std::size_t c = pick[e] % n;
              std::size_t row_deg = 0;
              std::size_t col_deg = 0;
              for (std::size_t f = 0; f < k; ++f) {
                if (used[f]) continue;
                if (pick[f] / n == r) ++row_deg;
                if (pick[f] % n == c) ++col_deg;
              }
              if (row_deg == 1 || col_deg == 1) {
                const double v = row_deg == 1 ? row[r] : col[c];
                row[r] -= v;
                col[c] -= v;
                used[e] = true;
                sol[{r, c}] = v;
                progressed = true;
              }
            }
            if (!progressed) return;  // a cycle: not a tree
          }
          for (double v : row) {
            if (std::abs(v) > 1e-9) return;
          }
          for (double v : col) {
            if (std::abs(v) > 1e-9) return;
          }
          std::map<std::pair<std::size_t, std::size_t>, double> nz;
          for (const auto& [cell, v] : sol) {
            if (v < -1e-12) return;
            if (v > 1e-12) nz[cell] = v;
          }
          for (const auto& seen : out) {
            if (seen.size() != nz.size()) continue;
            bool same = true;
            for (const auto& [cell, v] : nz) {
              auto it = seen.find(cell);
              if (it == seen.end() || std::abs(it->second - v) > 1e-9) {
                same = false;
                break;
              }
            }
            if (same) return;
          }
          out.push_back(std::move(nz));
          return;
        }
        for (std::size_t c = start; c + (k - depth) <= cells; ++c) {
          pick[depth] = c;
          choose(c + 1, depth + 1);
        }
      };
  choose(0, 0);
  return out;
}

}  // namespace mec::testing
