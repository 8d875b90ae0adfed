#include "mec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "mec/errors.hpp"
#include "mec/tolerances.hpp"

namespace mec {

namespace {

using Cell = std::pair<std::size_t, std::size_t>;
using Support = std::vector<Cell>;

// Vertices of one subproblem, keyed by support. A support that is a forest
// pins its masses down, so the key alone identifies the vertex.
using PartialSet = std::map<Support, std::vector<double>>;

// Residual row and column masses plus which of them are still open. Every
// move saturates one cell, closing its row or its column.
class SaturationState {
 public:
  SaturationState(const Marginal& p, const Marginal& q) : n_(p.size()) {
    rows_.assign(p.begin(), p.end());
    cols_.assign(q.begin(), q.end());
  }

 protected:
  using Key = std::tuple<unsigned, unsigned, std::vector<long long>>;

  std::pair<unsigned, unsigned> initial_masks() const {
    unsigned row_open = 0;
    unsigned col_open = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows_[i] >= kEpsZero) row_open |= 1u << i;
      if (cols_[i] >= kEpsZero) col_open |= 1u << i;
    }
    return {row_open, col_open};
  }

  Key key(unsigned row_open, unsigned col_open) const {
    std::vector<long long> q;
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_open >> i & 1u) q.push_back(std::llround(rows_[i] / kEpsZero));
      if (col_open >> i & 1u) q.push_back(std::llround(cols_[i] / kEpsZero));
    }
    return {row_open, col_open, std::move(q)};
  }

  struct Move {
    double mass;
    unsigned rows;
    unsigned cols;
    double row_before;
    double col_before;
  };

  Move apply(unsigned row_open, unsigned col_open, std::size_t r,
             std::size_t c) {
    Move mv{std::min(rows_[r], cols_[c]), row_open, col_open, rows_[r], cols_[c]};
    rows_[r] -= mv.mass;
    cols_[c] -= mv.mass;
    if (rows_[r] < kEpsZero) mv.rows &= ~(1u << r);
    if (cols_[c] < kEpsZero) mv.cols &= ~(1u << c);
    return mv;
  }

  void undo(const Move& mv, std::size_t r, std::size_t c) {
    rows_[r] = mv.row_before;
    cols_[c] = mv.col_before;
  }

  std::size_t n_;
  std::vector<double> rows_;
  std::vector<double> cols_;
};

class VertexEnumerator : SaturationState {
 public:
  using SaturationState::SaturationState;

  PartialSet run() {
    const auto [rows, cols] = initial_masks();
    return solve(rows, cols);
  }

 private:
  const PartialSet& solve(unsigned row_open, unsigned col_open) {
    Key k = key(row_open, col_open);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    PartialSet out;
    if (row_open == 0 || col_open == 0) {
      out.emplace(Support{}, std::vector<double>{});
    } else {
      for (std::size_t r = 0; r < n_; ++r) {
        if (!(row_open >> r & 1u)) continue;
        for (std::size_t c = 0; c < n_; ++c) {
          if (!(col_open >> c & 1u)) continue;
          expand(row_open, col_open, r, c, out);
        }
      }
    }
    return memo_.emplace(std::move(k), std::move(out)).first->second;
  }

  void expand(unsigned row_open, unsigned col_open, std::size_t r,
              std::size_t c, PartialSet& out) {
    const Move mv = apply(row_open, col_open, r, c);
    const PartialSet& sub = solve(mv.rows, mv.cols);
    for (const auto& [support, masses] : sub) {
      Support s;
      std::vector<double> ms;
      s.reserve(support.size() + 1);
      ms.reserve(support.size() + 1);
      bool placed = false;
      for (std::size_t i = 0; i < support.size(); ++i) {
        if (!placed && Cell{r, c} < support[i]) {
          s.emplace_back(r, c);
          ms.push_back(mv.mass);
          placed = true;
        }
        s.push_back(support[i]);
        ms.push_back(masses[i]);
      }
      if (!placed) {
        s.emplace_back(r, c);
        ms.push_back(mv.mass);
      }
      out.emplace(std::move(s), std::move(ms));
    }
    undo(mv, r, c);
  }

  std::map<Key, PartialSet> memo_;
};

// Entropy is a sum over cells, so the cheapest vertex follows from the
// cheapest completion of each residual state; no vertex list is kept.
class MinEntropySearch : SaturationState {
 public:
  using SaturationState::SaturationState;

  SparseCoupling run() {
    auto [rows, cols] = initial_masks();
    best(rows, cols);
    SparseCoupling c({n_, n_});
    while (rows != 0 && cols != 0) {
      const Choice& ch = memo_.at(key(rows, cols));
      const Move mv = apply(rows, cols, ch.r, ch.c);
      c.add({ch.r, ch.c}, mv.mass);
      rows = mv.rows;
      cols = mv.cols;
    }
    return c;
  }

 private:
  struct Choice {
    double entropy = 0.0;
    std::size_t r = 0;
    std::size_t c = 0;
  };

  double best(unsigned row_open, unsigned col_open) {
    if (row_open == 0 || col_open == 0) return 0.0;
    Key k = key(row_open, col_open);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second.entropy;

    Choice pick{std::numeric_limits<double>::infinity()};
    for (std::size_t r = 0; r < n_; ++r) {
      if (!(row_open >> r & 1u)) continue;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!(col_open >> c & 1u)) continue;
        const Move mv = apply(row_open, col_open, r, c);
        const double h = t_log_inv_t(mv.mass) + best(mv.rows, mv.cols);
        undo(mv, r, c);
        if (h < pick.entropy) pick = {h, r, c};
      }
    }
    memo_.emplace(std::move(k), pick);
    return pick.entropy;
  }

  std::map<Key, Choice> memo_;
};

void check_size(const char* who, const Marginal& p, const Marginal& q,
                std::size_t n_cap) {
  if (p.size() != q.size()) {
    throw DimensionError(std::string(who) + ": length mismatch");
  }
  if (p.size() > n_cap) {
    throw SizeError(std::string(who) + ": n = " + std::to_string(p.size()) +
                    " exceeds the cap of " + std::to_string(n_cap));
  }
  if (p.size() > 16) throw SizeError(std::string(who) + ": n above 16");
}

}  // namespace

VertexSet enumerate_vertices(const Marginal& p, const Marginal& q,
                             std::size_t n_cap) {
  check_size("enumerate_vertices", p, q, n_cap);

  const std::size_t n = p.size();
  const PartialSet found = VertexEnumerator(p, q).run();

  VertexSet set;
  const Marginal both[] = {p, q};
  for (const auto& [support, masses] : found) {
    SparseCoupling c({n, n});
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (masses[i] > kEpsZero) c.add({support[i].first, support[i].second}, masses[i]);
    }
    if (c.size() == 0 || max_marginal_error(c, both) > kEpsMarg) {
      throw InvariantViolation("enumerate_vertices: infeasible vertex");
    }
    set.vertices.push_back(std::move(c));
  }

  set.best_entropy = set.vertices.front().entropy();
  for (std::size_t i = 1; i < set.vertices.size(); ++i) {
    const double h = set.vertices[i].entropy();
    if (h < set.best_entropy) {
      set.best_entropy = h;
      set.best = i;
    }
  }
  return set;
}

ExactCoupling exact_min_entropy_2var(const Marginal& p, const Marginal& q,
                                     std::size_t n_cap) {
  check_size("exact_min_entropy_2var", p, q, n_cap);
  SparseCoupling c = MinEntropySearch(p, q).run();
  const Marginal both[] = {p, q};
  if (c.size() == 0 || max_marginal_error(c, both) > kEpsMarg) {
    throw InvariantViolation("exact_min_entropy_2var: infeasible optimum");
  }
  const double h = c.entropy();
  return {std::move(c), h};
}

double entropy_lower_bound(std::span<const Marginal> marginals) {
  if (marginals.empty()) {
    throw DimensionError("entropy_lower_bound: no marginals");
  }
  double best = 0.0;
  for (const auto& p : marginals) best = std::max(best, extended_entropy(p));
  return best;
}

bool support_is_acyclic(const SparseCoupling& coupling) {
  if (coupling.num_vars() != 2) {
    throw DimensionError("support_is_acyclic: needs a two-variable coupling");
  }
  const std::size_t rows = coupling.cardinalities()[0];
  std::vector<std::size_t> parent(rows + coupling.cardinalities()[1]);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [tuple, mass] : coupling.entries()) {
    const std::size_t a = find(tuple[0]);
    const std::size_t b = find(rows + tuple[1]);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace mec
