#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mec/coupling.hpp"
#include "mec/greedy.hpp"

namespace mec {

/// The linear system G u = a induced by a greedy trace.
///
/// Row j of G is the indicator of the trace's j-th tuple in the stacked
/// coordinate space of size n*m (axis t, state s maps to column t*n + s).
/// a_j = log2(mass_j) + 1. Rows are stored as sorted column lists.
struct CertificateSystem {
  std::size_t num_columns = 0;
  std::vector<std::vector<std::size_t>> rows;
  std::vector<double> a;

  std::size_t num_rows() const noexcept { return rows.size(); }
  /// Row-major 0/1 copy; only meant for small systems.
  std::vector<std::vector<int>> dense() const;

  /// Builds a system from an explicit 0/1 matrix (right-hand side zeroed).
  static CertificateSystem from_dense(
      const std::vector<std::vector<int>>& matrix);
};

/// Throws DomainError if a step has non-positive mass and DimensionError if
/// a tuple does not fit (n, m).
CertificateSystem build_system(const GreedyTrace& trace, std::size_t n,
                               std::size_t m);

/// True iff every row owns the final 1 of at least one of its columns.
/// A zero row fails.
bool check_last_one_property(const CertificateSystem& system);

/// Numerical rank of G from a full-pivot LU factorization.
std::size_t numeric_rank(const CertificateSystem& system);

enum class CertifyMethod {
  kLeastSquares,     // orthogonal factorization of the dense system
  kBackSubstitution  // exploits the last-1 pivots, exact for any size
};

struct WitnessCheck {
  IndexTuple tuple;
  double mass = 0.0;
  double reconstructed = 0.0;  // 2^(-1 + sum_k u_k(i_k))
};

struct Certificate {
  /// One vector per variable, the dual variables of the marginal rows.
  std::vector<std::vector<double>> u;
  double residual_norm = 0.0;
  double max_reconstruction_error = 0.0;
  /// Same check through the product form prod_k 2^(u_k(i_k) - 1/m).
  double max_product_form_error = 0.0;
  bool last_one_property = false;
  std::vector<WitnessCheck> witnesses;

  bool certified = false;
  std::string failure_reason;
};

/// Solves G u = a for the trace and checks that every nonzero coupling
/// entry is reproduced. Never throws on a failed check; inspect
/// `certified`.
Certificate evaluate_certificate(
    const SparseCoupling& coupling, const GreedyTrace& trace,
    CertifyMethod method = CertifyMethod::kLeastSquares);

/// As evaluate_certificate, but throws CertificationError on failure.
Certificate certify_local_optimum(
    const SparseCoupling& coupling, const GreedyTrace& trace,
    CertifyMethod method = CertifyMethod::kLeastSquares);

/// Rebuilds a coupling from the positive-mass steps of a trace. Throws
/// DomainError on repeated tuples.
SparseCoupling coupling_from_trace(const GreedyTrace& trace,
                                   std::vector<std::size_t> cardinalities);

}  // namespace mec
