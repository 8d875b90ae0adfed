#include "mec/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mec/errors.hpp"
#include "mec/tolerances.hpp"

namespace mec {

std::vector<std::vector<int>> CertificateSystem::dense() const {
  std::vector<std::vector<int>> out(rows.size(),
                                    std::vector<int>(num_columns, 0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c : rows[r]) out[r][c] = 1;
  }
  return out;
}

CertificateSystem CertificateSystem::from_dense(
    const std::vector<std::vector<int>>& matrix) {
  CertificateSystem sys;
  sys.num_columns = matrix.empty() ? 0 : matrix.front().size();
  for (const auto& row : matrix) {
    if (row.size() != sys.num_columns) {
      throw DimensionError("certificate system: ragged matrix");
    }
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0 && row[c] != 1) {
        throw DomainError("certificate system: entries must be 0 or 1");
      }
      if (row[c] == 1) cols.push_back(c);
    }
    sys.rows.push_back(std::move(cols));
  }
  sys.a.assign(sys.rows.size(), 0.0);
  return sys;
}

CertificateSystem build_system(const GreedyTrace& trace, std::size_t n,
                               std::size_t m) {
  if (trace.steps.empty()) throw DomainError("build_system: empty trace");
  CertificateSystem sys;
  sys.num_columns = n * m;
  sys.rows.reserve(trace.steps.size());
  sys.a.reserve(trace.steps.size());
  for (const auto& step : trace.steps) {
    if (!(step.mass > 0.0)) {
      throw DomainError("build_system: step " +
                        std::to_string(step.iteration + 1) +
                        " has non-positive mass");
    }
    if (step.tuple.size() != m) {
      throw DimensionError("build_system: tuple arity mismatch");
    }
    std::vector<std::size_t> cols(m);
    for (std::size_t t = 0; t < m; ++t) {
      if (step.tuple[t] >= n) {
        throw DimensionError("build_system: state out of range");
      }
      cols[t] = t * n + step.tuple[t];
    }
    sys.rows.push_back(std::move(cols));
    sys.a.push_back(std::log2(step.mass) + 1.0);
  }
  return sys;
}

namespace {

// last[c] = index of the final row holding a 1 in column c, or -1.
std::vector<long> last_rows(const CertificateSystem& sys) {
  std::vector<long> last(sys.num_columns, -1);
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    for (std::size_t c : sys.rows[r]) last[c] = static_cast<long>(r);
  }
  return last;
}

Eigen::MatrixXd to_eigen(const CertificateSystem& sys) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(sys.rows.size()),
      static_cast<Eigen::Index>(sys.num_columns));
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    for (std::size_t c : sys.rows[r]) {
      g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
    }
  }
  return g;
}

std::vector<double> solve_least_squares(const CertificateSystem& sys) {
  const Eigen::MatrixXd g = to_eigen(sys);
  const Eigen::VectorXd a =
      Eigen::Map<const Eigen::VectorXd>(sys.a.data(),
                                        static_cast<Eigen::Index>(sys.a.size()));
  const Eigen::VectorXd u = g.completeOrthogonalDecomposition().solve(a);
  return {u.data(), u.data() + u.size()};
}

// Rows are visited last to first; each row's pivot column appears in no
// later row, so fixing it there never disturbs an equation already solved.
std::vector<double> solve_back_substitution(const CertificateSystem& sys) {
  const auto last = last_rows(sys);
  std::vector<double> u(sys.num_columns, 0.0);
  for (std::size_t r = sys.rows.size(); r-- > 0;) {
    const auto& cols = sys.rows[r];
    auto pivot = std::find_if(cols.rbegin(), cols.rend(), [&](std::size_t c) {
      return last[c] == static_cast<long>(r);
    });
    if (pivot == cols.rend()) {
      throw CertificationError("back substitution: row " +
                               std::to_string(r + 1) + " has no pivot");
    }
    double rest = 0.0;
    for (std::size_t c : cols) {
      if (c != *pivot) rest += u[c];
    }
    u[*pivot] = sys.a[r] - rest;
  }
  return u;
}

double residual_norm(const CertificateSystem& sys, const std::vector<double>& u) {
  double acc = 0.0;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    double lhs = 0.0;
    for (std::size_t c : sys.rows[r]) lhs += u[c];
    const double d = lhs - sys.a[r];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double norm2(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

GreedyTrace positive_steps(const GreedyTrace& trace) {
  GreedyTrace out;
  out.phase_boundary = trace.phase_boundary;
  for (const auto& s : trace.steps) {
    if (s.mass > 0.0) out.steps.push_back(s);
  }
  return out;
}

}  // namespace

bool check_last_one_property(const CertificateSystem& system) {
  const auto last = last_rows(system);
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    const auto& cols = system.rows[r];
    const bool owns = std::any_of(cols.begin(), cols.end(), [&](std::size_t c) {
      return last[c] == static_cast<long>(r);
    });
    if (!owns) return false;
  }
  return true;
}

std::size_t numeric_rank(const CertificateSystem& system) {
  if (system.rows.empty() || system.num_columns == 0) return 0;
  return static_cast<std::size_t>(to_eigen(system).fullPivLu().rank());
}

SparseCoupling coupling_from_trace(const GreedyTrace& trace,
                                   std::vector<std::size_t> cardinalities) {
  SparseCoupling c(std::move(cardinalities));
  for (const auto& s : trace.steps) {
    if (s.mass > 0.0) c.add(s.tuple, s.mass);
  }
  return c;
}

Certificate evaluate_certificate(const SparseCoupling& coupling,
                                 const GreedyTrace& trace,
                                 CertifyMethod method) {
  Certificate cert;
  const std::size_t m = coupling.num_vars();
  const std::size_t n = coupling.cardinalities().front();
  for (std::size_t k : coupling.cardinalities()) {
    if (k != n) throw DimensionError("certify: unequal cardinalities");
  }
  cert.u.assign(m, std::vector<double>(n, 0.0));

  const GreedyTrace steps = positive_steps(trace);
  if (steps.steps.empty()) {
    cert.failure_reason = "trace has no positive-mass step";
    return cert;
  }

  // The certificate speaks about this coupling only if the trace built it.
  bool matches = steps.steps.size() == coupling.size();
  for (const auto& s : steps.steps) {
    if (!matches) break;
    const double got = coupling.mass(s.tuple);
    matches = got > 0.0 && std::abs(got - s.mass) <= kEpsCert;
  }
  if (!matches) {
    cert.failure_reason = "trace does not reproduce the coupling entries";
    return cert;
  }

  const CertificateSystem sys = build_system(steps, n, m);
  cert.last_one_property = check_last_one_property(sys);

  std::vector<double> u;
  if (method == CertifyMethod::kBackSubstitution) {
    if (!cert.last_one_property) {
      cert.failure_reason = "G lacks the last-1 property";
      return cert;
    }
    u = solve_back_substitution(sys);
  } else {
    u = solve_least_squares(sys);
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::copy_n(u.begin() + static_cast<long>(k * n), n, cert.u[k].begin());
  }
  cert.residual_norm = residual_norm(sys, u);

  const double inv_m = 1.0 / static_cast<double>(m);
  for (const auto& [tuple, mass] : coupling.assignment_order()) {
    double exponent = -1.0;
    double product = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      exponent += cert.u[k][tuple[k]];
      product *= std::exp2(cert.u[k][tuple[k]] - inv_m);
    }
    const double rec = std::exp2(exponent);
    cert.max_reconstruction_error =
        std::max(cert.max_reconstruction_error, std::abs(rec - mass));
    cert.max_product_form_error =
        std::max(cert.max_product_form_error, std::abs(product - mass));
    cert.witnesses.push_back({tuple, mass, rec});
  }

  if (!cert.last_one_property) {
    cert.failure_reason = "G lacks the last-1 property";
  } else if (cert.residual_norm > kEpsCert * std::max(1.0, norm2(sys.a))) {
    cert.failure_reason = "G u = a is inconsistent (residual " +
                          std::to_string(cert.residual_norm) + ")";
  } else if (cert.max_reconstruction_error > kEpsCert ||
             cert.max_product_form_error > kEpsCert) {
    cert.failure_reason = "witnesses do not reproduce the coupling masses";
  } else {
    cert.certified = true;
  }
  return cert;
}

Certificate certify_local_optimum(const SparseCoupling& coupling,
                                  const GreedyTrace& trace,
                                  CertifyMethod method) {
  Certificate cert = evaluate_certificate(coupling, trace, method);
  if (!cert.certified) {
    throw CertificationError("certification failed: " + cert.failure_reason);
  }
  return cert;
}

}  // namespace mec
