#include "gdrazin/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <utility>

namespace gdrazin {

namespace {

using EigenMat = Eigen::MatrixXcd;

EigenMat to_eigen(const ApproxMatrix& m) {
  EigenMat e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

ApproxMatrix from_eigen(const EigenMat& e) {
  ApproxMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

RankDecision decide_rank(const Eigen::VectorXd& sv, double eps_rank) {
  RankDecision d;
  if (sv.size() == 0 || sv(0) == 0.0) return d;
  const double top = sv(0);
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(sv.size()) && sv(static_cast<Eigen::Index>(r)) / top > eps_rank) ++r;
  d.rank = r;
  const double retained = sv(static_cast<Eigen::Index>(r - 1)) / top;
  const double discarded = r < static_cast<std::size_t>(sv.size()) ? sv(static_cast<Eigen::Index>(r)) / top : 0.0;
  d.ambiguous = retained - discarded < 10.0 * eps_rank;
  return d;
}

// Gauss-Jordan reduction over the Gaussian rationals. Returns pivot columns.
std::vector<std::size_t> reduce_rref(ExactMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    GaussRational inv = a(row, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      GaussRational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RankDecision rank_decision(const ExactMatrix& m, const Tolerance& /*tol*/) {
  // Bareiss: a(i,j) <- (a(k,k) a(i,j) - a(i,k) a(k,j)) / previous pivot.
  ExactMatrix a = m;
  GaussRational prev{1};
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    const GaussRational pivot = a(row, col);
    const GaussRational prev_inv = prev.inverse();
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j)
        a(i, j) = (pivot * a(i, j) - a(i, col) * a(row, j)) * prev_inv;
      a(i, col) = GaussRational{};
    }
    prev = pivot;
    ++row;
  }
  return {row, false};
}

RankDecision rank_decision(const ApproxMatrix& m, const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<EigenMat> svd(to_eigen(m));
  return decide_rank(svd.singularValues(), tol.eps_rank);
}

SubspaceBases<ExactScalar> subspace_bases(const ExactMatrix& m, const Tolerance& /*tol*/) {
  ExactMatrix r = m;
  auto pivots = reduce_rref(r);
  SubspaceBases<ExactScalar> out;
  out.range = ExactMatrix(m.rows(), pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out.range(i, k) = m(i, pivots[k]);

  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  out.kernel = ExactMatrix(m.cols(), m.cols() - pivots.size());
  std::size_t k = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    out.kernel(f, k) = GaussRational{1};
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) out.kernel(pivots[pr], k) = -r(pr, f);
    ++k;
  }
  return out;
}

SubspaceBases<ApproxScalar> subspace_bases(const ApproxMatrix& m, const Tolerance& tol) {
  SubspaceBases<ApproxScalar> out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.range = ApproxMatrix(m.rows(), 0);
    out.kernel = ApproxMatrix::identity(m.cols());
    return out;
  }
  Eigen::JacobiSVD<EigenMat> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  RankDecision d = decide_rank(svd.singularValues(), tol.eps_rank);
  const auto r = static_cast<Eigen::Index>(d.rank);
  const auto nc = static_cast<Eigen::Index>(m.cols());
  out.range = from_eigen(svd.matrixU().leftCols(r));
  out.kernel = from_eigen(svd.matrixV().rightCols(nc - r));
  out.ambiguous = d.ambiguous;
  return out;
}

ExactMatrix inverse(const ExactMatrix& m, const Tolerance& /*tol*/) {
  if (!m.is_square()) throw DimensionError("inverse of non-square " + m.shape());
  const std::size_t n = m.rows();
  ExactMatrix aug = hstack(m, ExactMatrix::identity(n));
  auto pivots = reduce_rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw ValueError("matrix is singular");
  return aug.block(0, n, n, n);
}

ApproxMatrix inverse(const ApproxMatrix& m, const Tolerance& tol) {
  if (!m.is_square()) throw DimensionError("inverse of non-square " + m.shape());
  if (m.rows() == 0) return m;
  if (rank(m, tol) < m.rows()) throw ValueError("matrix is numerically singular");
  return from_eigen(to_eigen(m).fullPivLu().inverse());
}

ApproxMatrix pseudoinverse(const ApproxMatrix& m, const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) return ApproxMatrix(m.cols(), m.rows());
  Eigen::JacobiSVD<EigenMat> svd(to_eigen(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv(0) * tol.eps_rank;
  Eigen::VectorXcd inv(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) inv(k) = sv(k) > cutoff ? 1.0 / sv(k) : 0.0;
  return from_eigen(svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint());
}

std::vector<double> singular_values(const ApproxMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<EigenMat> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

}  // namespace gdrazin
