#pragma once

#include <cstddef>
#include <set>

#include "gdrazin/matrix.hpp"

namespace gdrazin {

/// A square matrix p with p^2 = p (exactly, or within eps_eq).
template <Scalar S>
class Idempotent {
 public:
  /// Throws NotIdempotent when the residual p^2 - p is not zero.
  explicit Idempotent(Matrix<S> p, const Tolerance& tol = {});

  const Matrix<S>& matrix() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.rows(); }
  /// I - p.
  Idempotent complement() const;
  /// True when p is diagonal with 0/1 entries.
  bool is_coordinate() const;

 private:
  struct Trusted {};
  Idempotent(Matrix<S> p, Trusted) : p_(std::move(p)) {}
  Matrix<S> p_;
};

/// diag(e) with e_k = 1 for k in `ones`, 0 otherwise.
template <Scalar S>
Idempotent<S> coordinate_idempotent(std::size_t n, const std::set<std::size_t>& ones);

/// Corner blocks of x about p, each stored as a full-size ambient matrix:
/// a = pxp, b = px(1-p), c = (1-p)xp, d = (1-p)x(1-p).
template <Scalar S>
struct PierceSplit {
  Idempotent<S> p;
  Matrix<S> a, b, c, d;
};

template <Scalar S>
PierceSplit<S> pierce_split(const Matrix<S>& x, const Idempotent<S>& p);

/// a + b + c + d, after checking that every block sits in its corner.
template <Scalar S>
Matrix<S> pierce_join(const PierceSplit<S>& s, const Tolerance& tol = {});

/// Compressed 2x2 block form: a is r x r, d is (n-r) x (n-r).
template <Scalar S>
struct Blocks {
  Matrix<S> a, b, c, d;

  Matrix<S> assembled() const { return assemble(a, b, c, d); }
  /// (d c; b a): the layout of the same element about the complementary idempotent.
  Blocks flipped() const { return {d, c, b, a}; }
  static Blocks split(const Matrix<S>& x, std::size_t r) {
    const std::size_t n = x.rows();
    return {x.block(0, 0, r, r), x.block(0, r, r, n - r), x.block(r, 0, n - r, r), x.block(r, r, n - r, n - r)};
  }
};

/// Change of basis that turns p into diag(I_r, 0). For a coordinate idempotent
/// it is a permutation; otherwise its columns are a range basis of p followed
/// by a kernel basis. Compressing a Pierce corner gives its element of the
/// corner algebra pAp as an ordinary r x r matrix.
template <Scalar S>
class PierceFrame {
 public:
  explicit PierceFrame(const Idempotent<S>& p, const Tolerance& tol = {});

  std::size_t rank() const noexcept { return r_; }
  std::size_t size() const noexcept { return s_.rows(); }

  Blocks<S> compress(const Matrix<S>& x) const;
  Matrix<S> expand(const Matrix<S>& compressed) const;
  Matrix<S> expand(const Blocks<S>& blocks) const { return expand(blocks.assembled()); }

 private:
  std::size_t r_ = 0;
  Matrix<S> s_, s_inv_;
};

}  // namespace gdrazin
