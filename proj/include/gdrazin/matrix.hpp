#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gdrazin/errors.hpp"
#include "gdrazin/scalar.hpp"

namespace gdrazin {

/// Thresholds for approximate arithmetic. The exact backend ignores both.
struct Tolerance {
  double eps_rank = 1e-10;  // relative singular-value cutoff
  double eps_eq = 1e-9;     // max entrywise modulus for equality

  void validate() const {
    if (!(eps_rank >= 0.0) || !(eps_eq >= 0.0)) throw ValueError("tolerances must be non-negative");
  }
};

/// Dense row-major matrix over one scalar backend. Zero-sized matrices are
/// allowed internally (empty Pierce corners); the file format rejects them.
template <Scalar S>
class Matrix {
 public:
  using value_type = S;
  using Traits = ScalarTraits<S>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Traits::zero()) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionError("entry count " + std::to_string(data_.size()) + " != " + std::to_string(rows_) +
                           "x" + std::to_string(cols_));
    for (const auto& v : data_)
      if (!Traits::is_finite(v)) throw ValueError("non-finite matrix entry");
  }
  /// Row-wise literal: Matrix<S>{{0, 1}, {0, 0}}.
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one();
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const S> entries() const noexcept { return data_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero(double eps = 0.0) const {
    return std::all_of(data_.begin(), data_.end(), [eps](const S& v) { return Traits::is_zero(v, eps); });
  }

  /// Copy of the block with top-left corner (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_)
      throw DimensionError("product of " + x.shape() + " and " + y.shape());
    Matrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const S& xik = x(i, k);
        if (Traits::is_zero(xik, 0.0)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          const S& ykj = y(k, j);
          if (!Traits::is_zero(ykj, 0.0)) out(i, j) += xik * ykj;
        }
      }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string(what) + " of " + shape() + " and " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using ExactMatrix = Matrix<ExactScalar>;
using ApproxMatrix = Matrix<ApproxScalar>;

/// x^n with x^0 = I.
template <Scalar S>
Matrix<S> pow(const Matrix<S>& x, std::size_t n) {
  if (!x.is_square()) throw DimensionError("power of non-square " + x.shape());
  Matrix<S> result = Matrix<S>::identity(x.rows());
  Matrix<S> base = x;
  while (n) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

/// Largest entrywise modulus of x - y.
template <Scalar S>
double max_abs_diff(const Matrix<S>& x, const Matrix<S>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError("comparison of " + x.shape() + " and " + y.shape());
  double m = 0.0;
  auto xe = x.entries();
  auto ye = y.entries();
  for (std::size_t k = 0; k < xe.size(); ++k) m = std::max(m, ScalarTraits<S>::magnitude(xe[k] - ye[k]));
  return m;
}

template <Scalar S>
double max_abs(const Matrix<S>& x) {
  double m = 0.0;
  for (const auto& v : x.entries()) m = std::max(m, ScalarTraits<S>::magnitude(v));
  return m;
}

template <Scalar S>
double frobenius_norm(const Matrix<S>& x) {
  double s = 0.0;
  for (const auto& v : x.entries()) {
    double a = ScalarTraits<S>::magnitude(v);
    s += a * a;
  }
  return std::sqrt(s);
}

/// Exact backend: entrywise equality. Approx backend: max |x - y| <= eps_eq.
template <Scalar S>
bool equal(const Matrix<S>& x, const Matrix<S>& y, const Tolerance& tol = {}) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError("comparison of " + x.shape() + " and " + y.shape());
  if constexpr (is_exact_v<S>) {
    return x == y;
  } else {
    return max_abs_diff(x, y) <= tol.eps_eq;
  }
}

template <Scalar S>
bool is_zero(const Matrix<S>& x, const Tolerance& tol = {}) {
  if constexpr (is_exact_v<S>) {
    return x.is_zero();
  } else {
    return x.is_zero(tol.eps_eq);
  }
}

/// 2x2 block assembly (a b; c d). Row/column sizes must conform.
template <Scalar S>
Matrix<S> assemble(const Matrix<S>& a, const Matrix<S>& b, const Matrix<S>& c, const Matrix<S>& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw DimensionError("non-conforming 2x2 block layout");
  Matrix<S> out(a.rows() + c.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  out.set_block(a.rows(), 0, c);
  out.set_block(a.rows(), a.cols(), d);
  return out;
}

template <Scalar S>
Matrix<S> hstack(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack of " + a.shape() + " and " + b.shape());
  Matrix<S> out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

template <Scalar S>
Matrix<S> transpose(const Matrix<S>& a) {
  Matrix<S> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

inline ApproxMatrix to_approx(const ExactMatrix& m) {
  std::vector<ApproxScalar> e;
  e.reserve(m.entries().size());
  for (const auto& v : m.entries()) e.push_back(v.to_complex());
  return {m.rows(), m.cols(), std::move(e)};
}

template <Scalar S>
Matrix<S> from_exact(const ExactMatrix& m) {
  if constexpr (is_exact_v<S>) {
    return m;
  } else {
    return to_approx(m);
  }
}

/// Powers of a fixed square matrix, computed once and reused by series evaluators.
template <Scalar S>
class PowerCache {
 public:
  explicit PowerCache(Matrix<S> base) : base_(std::move(base)) {
    if (!base_.is_square()) throw DimensionError("power cache of non-square " + base_.shape());
    powers_.push_back(Matrix<S>::identity(base_.rows()));
  }
  const Matrix<S>& operator()(std::size_t n) {
    while (powers_.size() <= n) powers_.push_back(powers_.back() * base_);
    return powers_[n];
  }
  const Matrix<S>& base() const noexcept { return base_; }

 private:
  Matrix<S> base_;
  std::deque<Matrix<S>> powers_;
};

}  // namespace gdrazin
