#include "mec/greedy.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "mec/errors.hpp"
#include "mec/tolerances.hpp"

namespace mec {

std::size_t GreedyTrace::assignment_count() const {
  return static_cast<std::size_t>(std::count_if(
      steps.begin(), steps.end(), [](const GreedyStep& s) { return s.mass > 0.0; }));
}

std::size_t max_assignment_steps(std::size_t n, std::size_t m) {
  return n * m - m + 1;
}

namespace {

struct HeapEntry {
  double value;
  std::size_t state;
};

// Max-heap order: larger value first, then lower state index.
struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.value != b.value) return a.value < b.value;
    return a.state > b.state;
  }
};

using MaxHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess>;

// Residual marginals shared by both solvers. Entries below kEpsZero are
// held at exactly zero, so every nonzero residual is at least kEpsZero.
class ResidualState {
 public:
  explicit ResidualState(std::span<const Marginal> marginals)
      : n_(require_common_length(marginals)),
        m_(marginals.size()),
        residual_(m_, std::vector<double>(n_)),
        nonzero_(m_, 0),
        coupling_(std::vector<std::size_t>(m_, n_)) {
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        const double v = marginals[j][k];
        residual_[j][k] = v < kEpsZero ? 0.0 : v;
        if (residual_[j][k] > 0.0) ++nonzero_[j];
      }
    }
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  double residual(std::size_t j, std::size_t k) const { return residual_[j][k]; }

  bool some_marginal_exhausted() const {
    return std::any_of(nonzero_.begin(), nonzero_.end(),
                       [](std::size_t c) { return c == 0; });
  }

  // Assigns min_j residual(j, tuple[j]) to the tuple and subtracts it.
  void assign(IndexTuple tuple) {
    double u = residual_[0][tuple[0]];
    for (std::size_t j = 1; j < m_; ++j) u = std::min(u, residual_[j][tuple[j]]);

    GreedyStep step;
    step.iteration = trace_.steps.size();
    step.mass = u;
    if (u > 0.0) {
      if (++assignments_ > max_assignment_steps(n_, m_)) {
        throw InvariantViolation(
            "greedy: exceeded n*m - m + 1 assignment steps");
      }
      for (std::size_t j = 0; j < m_; ++j) {
        double& r = residual_[j][tuple[j]];
        r -= u;
        if (r < kEpsZero) {
          r = 0.0;
          --nonzero_[j];
          step.saturated.push_back({j, tuple[j]});
        }
        if (!heaps_.empty() && r > 0.0) heaps_[j].push({r, tuple[j]});
      }
      if (step.saturated.empty()) {
        throw InvariantViolation("greedy: step saturated no marginal entry");
      }
      coupling_.add(tuple, u);
    }
    step.tuple = std::move(tuple);
    trace_.steps.push_back(std::move(step));
  }

  void build_heaps() {
    heaps_.assign(m_, MaxHeap{});
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (residual_[j][k] > 0.0) heaps_[j].push({residual_[j][k], k});
      }
    }
  }

  // Lowest-index argmax of residual j among nonzero entries.
  std::size_t argmax(std::size_t j) {
    auto& heap = heaps_[j];
    while (!heap.empty()) {
      const HeapEntry top = heap.top();
      if (residual_[j][top.state] == top.value) return top.state;
      heap.pop();
    }
    throw InvariantViolation("greedy: argmax of an exhausted marginal");
  }

  void run_update_routine() {
    build_heaps();
    while (!some_marginal_exhausted()) {
      IndexTuple tuple(m_);
      for (std::size_t j = 0; j < m_; ++j) tuple[j] = argmax(j);
      assign(std::move(tuple));
    }
  }

  GreedyResult finish() && {
    return {std::move(coupling_), std::move(trace_)};
  }

  GreedyTrace& trace() { return trace_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<double>> residual_;
  std::vector<std::size_t> nonzero_;
  std::vector<MaxHeap> heaps_;
  SparseCoupling coupling_;
  GreedyTrace trace_;
  std::size_t assignments_ = 0;
};

}  // namespace

GreedyResult greedy_coupling(std::span<const Marginal> marginals) {
  ResidualState state(marginals);
  state.run_update_routine();
  return std::move(state).finish();
}

GreedyResult greedy_coupling_two_phase(std::span<const Marginal> marginals) {
  ResidualState state(marginals);
  const std::size_t n = state.n();
  const std::size_t m = state.m();

  // Unselected states keep their original mass during Phase I, so the
  // restricted argmax of round t is the t-th entry of the stable
  // decreasing order.
  std::vector<std::vector<std::size_t>> order;
  order.reserve(m);
  for (const auto& p : marginals) order.push_back(sort_decreasing(p).perm);

  for (std::size_t t = 0; t < n; ++t) {
    IndexTuple tuple(m);
    for (std::size_t j = 0; j < m; ++j) tuple[j] = order[j][t];
    state.assign(std::move(tuple));
  }
  state.trace().phase_boundary = n;
  state.run_update_routine();
  return std::move(state).finish();
}

GreedyResult solve(std::span<const Marginal> marginals, Solver solver) {
  switch (solver) {
    case Solver::kGreedy:
      return greedy_coupling(marginals);
    case Solver::kTwoPhase:
      return greedy_coupling_two_phase(marginals);
  }
  throw DomainError("unknown solver");
}

}  // namespace mec
