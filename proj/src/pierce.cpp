#include "gdrazin/pierce.hpp"

#include <string>
#include <vector>

#include "gdrazin/linalg.hpp"

namespace gdrazin {

template <Scalar S>
Idempotent<S>::Idempotent(Matrix<S> p, const Tolerance& tol) : p_(std::move(p)) {
  if (!p_.is_square()) throw DimensionError("idempotent must be square, got " + p_.shape());
  if (!equal(p_ * p_, p_, tol))
    throw NotIdempotent("p^2 != p (residual " + std::to_string(max_abs_diff(p_ * p_, p_)) + ")");
}

template <Scalar S>
Idempotent<S> Idempotent<S>::complement() const {
  return Idempotent(Matrix<S>::identity(size()) - p_, Trusted{});
}

template <Scalar S>
bool Idempotent<S>::is_coordinate() const {
  using T = ScalarTraits<S>;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      const S& v = p_(i, j);
      if (i != j && !T::is_zero(v, 0.0)) return false;
      if (i == j && !T::is_zero(v, 0.0) && !(v == T::one())) return false;
    }
  return true;
}

template <Scalar S>
Idempotent<S> coordinate_idempotent(std::size_t n, const std::set<std::size_t>& ones) {
  Matrix<S> p(n, n);
  for (auto k : ones) {
    if (k >= n) throw DimensionError("coordinate index " + std::to_string(k) + " out of range for size " + std::to_string(n));
    p(k, k) = ScalarTraits<S>::one();
  }
  return Idempotent<S>(std::move(p));
}

template <Scalar S>
PierceSplit<S> pierce_split(const Matrix<S>& x, const Idempotent<S>& p) {
  if (x.rows() != p.size() || x.cols() != p.size())
    throw DimensionError("Pierce split of " + x.shape() + " about a " + p.matrix().shape() + " idempotent");
  const Matrix<S>& pm = p.matrix();
  const Matrix<S> q = Matrix<S>::identity(p.size()) - pm;
  Matrix<S> xp = x * pm;
  Matrix<S> xq = x * q;
  return {p, pm * xp, pm * xq, q * xp, q * xq};
}

template <Scalar S>
Matrix<S> pierce_join(const PierceSplit<S>& s, const Tolerance& tol) {
  const Matrix<S>& p = s.p.matrix();
  const Matrix<S> q = Matrix<S>::identity(s.p.size()) - p;
  auto check = [&](const Matrix<S>& blk, const Matrix<S>& left, const Matrix<S>& right, const char* name) {
    if (blk.rows() != p.rows() || blk.cols() != p.cols())
      throw DimensionError(std::string("block ") + name + " has shape " + blk.shape());
    if (!equal(left * blk * right, blk, tol))
      throw ValueError(std::string("block ") + name + " does not lie in its Pierce corner");
  };
  check(s.a, p, p, "a");
  check(s.b, p, q, "b");
  check(s.c, q, p, "c");
  check(s.d, q, q, "d");
  return s.a + s.b + s.c + s.d;
}

template <Scalar S>
PierceFrame<S>::PierceFrame(const Idempotent<S>& p, const Tolerance& tol) {
  const std::size_t n = p.size();
  if (p.is_coordinate()) {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < n; ++k)
      if (!ScalarTraits<S>::is_zero(p.matrix()(k, k), 0.0)) order.push_back(k);
    r_ = order.size();
    for (std::size_t k = 0; k < n; ++k)
      if (ScalarTraits<S>::is_zero(p.matrix()(k, k), 0.0)) order.push_back(k);
    s_ = Matrix<S>(n, n);
    for (std::size_t col = 0; col < n; ++col) s_(order[col], col) = ScalarTraits<S>::one();
    s_inv_ = transpose(s_);
    return;
  }
  // The range of p is the kernel of I - p, so both bases come from kernels.
  SubspaceBases<S> on = subspace_bases(Matrix<S>::identity(n) - p.matrix(), tol);
  SubspaceBases<S> off = subspace_bases(p.matrix(), tol);
  r_ = on.kernel.cols();
  if (r_ + off.kernel.cols() != n) throw NotIdempotent("range and kernel of p do not span the space");
  s_ = hstack(on.kernel, off.kernel);
  s_inv_ = inverse(s_, tol);
}

template <Scalar S>
Blocks<S> PierceFrame<S>::compress(const Matrix<S>& x) const {
  return Blocks<S>::split(s_inv_ * x * s_, r_);
}

template <Scalar S>
Matrix<S> PierceFrame<S>::expand(const Matrix<S>& compressed) const {
  return s_ * compressed * s_inv_;
}

#define GDRAZIN_INSTANTIATE(S)                                                                     \
  template class Idempotent<S>;                                                                    \
  template class PierceFrame<S>;                                                                   \
  template Idempotent<S> coordinate_idempotent(std::size_t, const std::set<std::size_t>&);        \
  template PierceSplit<S> pierce_split(const Matrix<S>&, const Idempotent<S>&);                    \
  template Matrix<S> pierce_join(const PierceSplit<S>&, const Tolerance&);

GDRAZIN_INSTANTIATE(ExactScalar)
GDRAZIN_INSTANTIATE(ApproxScalar)

#undef GDRAZIN_INSTANTIATE

}  // namespace gdrazin
