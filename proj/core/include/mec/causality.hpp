#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mec/greedy.hpp"
#include "mec/marginal.hpp"

namespace mec {

/// Joint distribution of two discrete variables; rows index X, columns Y.
///
/// States that never occur (all-zero row or column) are dropped on
/// construction and reported in `warnings`.
class JointObservation {
 public:
  /// Throws DomainError on negative entries or a total away from one and
  /// DimensionError on ragged or empty input.
  static JointObservation from_matrix(std::vector<std::vector<double>> joint);

  /// Empirical frequencies of observed (x, y) pairs. Labels are ordered
  /// ascending; unobserved labels do not appear.
  static JointObservation from_samples(
      const std::vector<std::pair<long long, long long>>& samples);

  std::size_t rows() const noexcept { return joint_.size(); }
  std::size_t cols() const noexcept {
    return joint_.empty() ? 0 : joint_.front().size();
  }
  double at(std::size_t x, std::size_t y) const { return joint_[x][y]; }
  const std::vector<std::vector<double>>& matrix() const noexcept {
    return joint_;
  }
  const std::vector<std::string>& warnings() const noexcept {
    return warnings_;
  }

  std::vector<double> x_marginal() const;
  std::vector<double> y_marginal() const;

  /// max |p(x,y) - p(x)p(y)| <= tol.
  bool is_independent(double tol) const;

 private:
  std::vector<std::vector<double>> joint_;
  std::vector<std::string> warnings_;
};

enum class Axis { kX, kY };

/// Distribution of the other variable given each state of `given`.
std::vector<Marginal> conditionals_from_joint(const JointObservation& obs,
                                              Axis given);

/// Entropy of the greedy coupling of the conditionals: an achievable
/// exogenous entropy for the direction they describe. A single conditional
/// is its own coupling.
double exogenous_entropy_estimate(const std::vector<Marginal>& conditionals,
                                  Solver solver = Solver::kTwoPhase);

enum class Verdict { kXtoY, kYtoX, kUndecided };

struct DirectionReport {
  double h_x = 0.0;
  double h_y = 0.0;
  double h_exo_x_to_y = 0.0;  // coupling of {p(Y | X = i)}
  double h_exo_y_to_x = 0.0;  // coupling of {p(X | Y = j)}
  double score_x_to_y = 0.0;  // h_x + h_exo_x_to_y
  double score_y_to_x = 0.0;  // h_y + h_exo_y_to_x
  double margin = 0.0;
  Verdict verdict = Verdict::kUndecided;
  std::vector<std::string> diagnostics;
};

/// Prefers the direction whose score is smaller by more than `margin` bits.
/// Independent joints are always undecided.
DirectionReport infer_direction(const JointObservation& obs,
                                double margin = 0.0,
                                Solver solver = Solver::kTwoPhase);

const char* to_string(Verdict v);

}  // namespace mec
