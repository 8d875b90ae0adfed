#include "mec/causality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mec/errors.hpp"
#include "mec/tolerances.hpp"

namespace mec {

JointObservation JointObservation::from_matrix(
    std::vector<std::vector<double>> joint) {
  if (joint.empty() || joint.front().empty()) {
    throw DimensionError("joint: empty matrix");
  }
  const std::size_t cols = joint.front().size();
  double total = 0.0;
  for (const auto& row : joint) {
    if (row.size() != cols) throw DimensionError("joint: dimension mismatch");
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError("joint: negative or non-finite entry");
      }
      total += v;
    }
  }
  if (std::abs(total - 1.0) > kEpsSum) {
    throw DomainError("joint: entries sum to " + std::to_string(total) +
                      ", expected 1");
  }

  JointObservation obs;
  std::vector<std::size_t> keep_rows;
  std::vector<std::size_t> keep_cols;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    double s = 0.0;
    for (double v : joint[x]) s += v;
    if (s > kEpsZero) {
      keep_rows.push_back(x);
    } else {
      obs.warnings_.push_back("X state " + std::to_string(x + 1) +
                              " has zero mass; dropped");
    }
  }
  for (std::size_t y = 0; y < cols; ++y) {
    double s = 0.0;
    for (const auto& row : joint) s += row[y];
    if (s > kEpsZero) {
      keep_cols.push_back(y);
    } else {
      obs.warnings_.push_back("Y state " + std::to_string(y + 1) +
                              " has zero mass; dropped");
    }
  }
  for (std::size_t x : keep_rows) {
    std::vector<double> row;
    row.reserve(keep_cols.size());
    for (std::size_t y : keep_cols) row.push_back(joint[x][y]);
    obs.joint_.push_back(std::move(row));
  }
  return obs;
}

JointObservation JointObservation::from_samples(
    const std::vector<std::pair<long long, long long>>& samples) {
  if (samples.empty()) throw DomainError("joint: no samples");
  std::map<long long, std::size_t> xs;
  std::map<long long, std::size_t> ys;
  for (const auto& [x, y] : samples) {
    xs.emplace(x, 0);
    ys.emplace(y, 0);
  }
  std::size_t i = 0;
  for (auto& [label, idx] : xs) idx = i++;
  i = 0;
  for (auto& [label, idx] : ys) idx = i++;

  std::vector<std::vector<double>> counts(xs.size(),
                                          std::vector<double>(ys.size(), 0.0));
  for (const auto& [x, y] : samples) counts[xs[x]][ys[y]] += 1.0;
  const double total = static_cast<double>(samples.size());
  for (auto& row : counts) {
    for (double& v : row) v /= total;
  }
  return from_matrix(std::move(counts));
}

std::vector<double> JointObservation::x_marginal() const {
  std::vector<double> out(rows(), 0.0);
  for (std::size_t x = 0; x < rows(); ++x) {
    for (double v : joint_[x]) out[x] += v;
  }
  return out;
}

std::vector<double> JointObservation::y_marginal() const {
  std::vector<double> out(cols(), 0.0);
  for (const auto& row : joint_) {
    for (std::size_t y = 0; y < row.size(); ++y) out[y] += row[y];
  }
  return out;
}

bool JointObservation::is_independent(double tol) const {
  const auto px = x_marginal();
  const auto py = y_marginal();
  for (std::size_t x = 0; x < rows(); ++x) {
    for (std::size_t y = 0; y < cols(); ++y) {
      if (std::abs(joint_[x][y] - px[x] * py[y]) > tol) return false;
    }
  }
  return true;
}

std::vector<Marginal> conditionals_from_joint(const JointObservation& obs,
                                              Axis given) {
  std::vector<Marginal> out;
  if (given == Axis::kY) {
    const auto py = obs.y_marginal();
    for (std::size_t y = 0; y < obs.cols(); ++y) {
      std::vector<double> c(obs.rows());
      for (std::size_t x = 0; x < obs.rows(); ++x) c[x] = obs.at(x, y) / py[y];
      out.emplace_back(std::move(c));
    }
  } else {
    const auto px = obs.x_marginal();
    for (std::size_t x = 0; x < obs.rows(); ++x) {
      std::vector<double> c(obs.cols());
      for (std::size_t y = 0; y < obs.cols(); ++y) c[y] = obs.at(x, y) / px[x];
      out.emplace_back(std::move(c));
    }
  }
  return out;
}

double exogenous_entropy_estimate(const std::vector<Marginal>& conditionals,
                                  Solver solver) {
  require_common_length(conditionals, 1);
  if (conditionals.size() == 1) return extended_entropy(conditionals.front());
  return solve(conditionals, solver).entropy();
}

DirectionReport infer_direction(const JointObservation& obs, double margin,
                                Solver solver) {
  if (!(margin >= 0.0)) throw DomainError("infer_direction: negative margin");
  DirectionReport rep;
  rep.margin = margin;
  rep.diagnostics = obs.warnings();
  rep.h_x = extended_entropy(obs.x_marginal());
  rep.h_y = extended_entropy(obs.y_marginal());
  rep.h_exo_x_to_y = exogenous_entropy_estimate(
      conditionals_from_joint(obs, Axis::kX), solver);
  rep.h_exo_y_to_x = exogenous_entropy_estimate(
      conditionals_from_joint(obs, Axis::kY), solver);
  rep.score_x_to_y = rep.h_x + rep.h_exo_x_to_y;
  rep.score_y_to_x = rep.h_y + rep.h_exo_y_to_x;

  if (obs.is_independent(kEpsSum)) {
    rep.diagnostics.push_back(
        "joint factorizes into its marginals; direction is not identifiable");
    rep.verdict = Verdict::kUndecided;
  } else if (rep.score_x_to_y + margin < rep.score_y_to_x) {
    rep.verdict = Verdict::kXtoY;
  } else if (rep.score_y_to_x + margin < rep.score_x_to_y) {
    rep.verdict = Verdict::kYtoX;
  } else {
    rep.verdict = Verdict::kUndecided;
  }
  return rep;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kXtoY:
      return "XtoY";
    case Verdict::kYtoX:
      return "YtoX";
    case Verdict::kUndecided:
      return "undecided";
  }
  return "undecided";
}

}  // namespace mec
