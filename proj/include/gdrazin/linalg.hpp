#pragma once

#include <cstddef>
#include <vector>

#include "gdrazin/matrix.hpp"

namespace gdrazin {

/// Outcome of a rank decision. `ambiguous` is only ever set on the approx
/// backend, when the gap between the smallest retained and the largest
/// discarded relative singular value is below 10 * eps_rank.
struct RankDecision {
  std::size_t rank = 0;
  bool ambiguous = false;
};

/// Exact: fraction-free (Bareiss) elimination. Approx: count of singular
/// values above eps_rank times the largest one; 0 for the zero matrix.
RankDecision rank_decision(const ExactMatrix& m, const Tolerance& tol = {});
RankDecision rank_decision(const ApproxMatrix& m, const Tolerance& tol = {});

template <Scalar S>
std::size_t rank(const Matrix<S>& m, const Tolerance& tol = {}) {
  return rank_decision(m, tol).rank;
}

/// Column-space and null-space bases of a matrix, sized consistently
/// (range.cols() + kernel.cols() == m.cols() when m is square).
template <Scalar S>
struct SubspaceBases {
  Matrix<S> range;   // m.rows() x r
  Matrix<S> kernel;  // m.cols() x (m.cols() - r)
  bool ambiguous = false;
};

/// Exact: pivot columns of m and the reduced-row-echelon kernel basis.
/// Approx: leading left singular vectors and trailing right singular vectors.
SubspaceBases<ExactScalar> subspace_bases(const ExactMatrix& m, const Tolerance& tol = {});
SubspaceBases<ApproxScalar> subspace_bases(const ApproxMatrix& m, const Tolerance& tol = {});

/// Inverse of a square matrix; throws ValueError when singular.
ExactMatrix inverse(const ExactMatrix& m, const Tolerance& tol = {});
ApproxMatrix inverse(const ApproxMatrix& m, const Tolerance& tol = {});

/// Moore-Penrose pseudoinverse (approx backend only).
ApproxMatrix pseudoinverse(const ApproxMatrix& m, const Tolerance& tol = {});

/// Singular values in non-increasing order (approx backend).
std::vector<double> singular_values(const ApproxMatrix& m);

}  // namespace gdrazin
