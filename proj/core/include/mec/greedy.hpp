#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mec/coupling.hpp"
#include "mec/marginal.hpp"

namespace mec {

/// (axis, state) pair whose residual marginal entry reached zero.
struct AxisState {
  std::size_t axis = 0;
  std::size_t state = 0;
  friend auto operator<=>(const AxisState&, const AxisState&) = default;
};

struct GreedyStep {
  std::size_t iteration = 0;  // zero-based position in the trace
  IndexTuple tuple;
  double mass = 0.0;
  std::vector<AxisState> saturated;
};

/// Every assignment the solver made, in order.
///
/// The two-phase solver also records Phase I rounds whose mass was zero;
/// those never appear in the coupling.
struct GreedyTrace {
  std::vector<GreedyStep> steps;
  /// Number of Phase I rounds, i.e. the index of the first Phase II step.
  /// Only set by the two-phase solver.
  std::optional<std::size_t> phase_boundary;

  /// Steps with positive mass.
  std::size_t assignment_count() const;
};

struct GreedyResult {
  SparseCoupling coupling;
  GreedyTrace trace;

  double entropy() const { return coupling.entropy(); }
};

enum class Solver {
  kGreedy,    // repeated UpdateRoutine
  kTwoPhase,  // one pass over sorted positions, then UpdateRoutine
};

/// n*m - m + 1.
std::size_t max_assignment_steps(std::size_t n, std::size_t m);

/// Repeatedly couples the largest remaining mass of every marginal,
/// assigning the smallest of those maxima to the joint cell they index.
/// Argmax ties go to the lowest state index.
GreedyResult greedy_coupling(std::span<const Marginal> marginals);

/// Phase I visits every sorted position of every marginal exactly once;
/// Phase II runs the plain greedy loop on what is left.
GreedyResult greedy_coupling_two_phase(std::span<const Marginal> marginals);

GreedyResult solve(std::span<const Marginal> marginals, Solver solver);

}  // namespace mec
