#include "gdrazin/drazin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gdrazin {

namespace {

template <Scalar S>
struct IndexScan {
  std::size_t index = 0;
  Matrix<S> power;  // m^index
  bool ambiguous = false;
};

template <Scalar S>
IndexScan<S> scan_index(const Matrix<S>& m, const Tolerance& tol) {
  if (!m.is_square()) throw DimensionError("Drazin index of non-square " + m.shape());
  IndexScan<S> scan;
  scan.power = Matrix<S>::identity(m.rows());
  std::size_t prev_rank = m.rows();
  for (std::size_t k = 0;; ++k) {
    Matrix<S> next = scan.power * m;
    RankDecision d = rank_decision(next, tol);
    scan.ambiguous = scan.ambiguous || d.ambiguous;
    if (d.rank == prev_rank || k >= m.rows()) {
      scan.index = k;
      return scan;
    }
    prev_rank = d.rank;
    scan.power = std::move(next);
  }
}

}  // namespace

template <Scalar S>
std::size_t drazin_index(const Matrix<S>& m, const Tolerance& tol) {
  return scan_index(m, tol).index;
}

template <Scalar S>
DrazinData<S> complete_drazin_data(const Matrix<S>& m, Matrix<S> dinv, const Tolerance& tol) {
  DrazinData<S> out;
  out.index = drazin_index(m, tol);
  Matrix<S> m_dinv = m * dinv;
  out.pi = Matrix<S>::identity(m.rows()) - m_dinv;
  out.core = m * m_dinv;
  out.nil = m * out.pi;
  out.dinv = std::move(dinv);
  return out;
}

template <Scalar S>
DrazinData<S> drazin(const Matrix<S>& m, const Tolerance& tol) {
  tol.validate();
  const std::size_t n = m.rows();
  IndexScan<S> scan = scan_index(m, tol);
  auto ambiguity = [&] {
    return RankAmbiguity("numerical rank of a power of the " + m.shape() +
                         " input is ambiguous at eps_rank=" + std::to_string(tol.eps_rank));
  };
  if (scan.ambiguous) throw ambiguity();

  Matrix<S> dinv(n, n);
  if (scan.index == 0) {
    dinv = inverse(m, tol);
  } else {
    SubspaceBases<S> bases = subspace_bases(scan.power, tol);
    if (bases.ambiguous || bases.range.cols() + bases.kernel.cols() != n) throw ambiguity();
    const std::size_t r = bases.range.cols();
    if (r > 0) {
      Matrix<S> s = hstack(bases.range, bases.kernel);
      Matrix<S> s_inv = inverse(s, tol);
      Matrix<S> core_block = (s_inv * m * s).block(0, 0, r, r);
      Matrix<S> inner(n, n);
      inner.set_block(0, 0, inverse(core_block, tol));
      dinv = s * inner * s_inv;
    }
  }
  DrazinData<S> out;
  out.index = scan.index;
  Matrix<S> m_dinv = m * dinv;
  out.pi = Matrix<S>::identity(n) - m_dinv;
  out.core = m * m_dinv;
  out.nil = m * out.pi;
  out.dinv = std::move(dinv);
  return out;
}

template <Scalar S>
Matrix<S> spectral_idempotent(const Matrix<S>& m, const Tolerance& tol) {
  return drazin(m, tol).pi;
}

namespace {

template <Scalar S>
bool vanishes_scaled(const Matrix<S>& power, double base_norm, std::size_t exponent, const Tolerance& tol) {
  if constexpr (is_exact_v<S>) {
    return power.is_zero();
  } else {
    double scale = std::max(1.0, std::pow(base_norm, static_cast<double>(exponent)));
    return frobenius_norm(power) <= tol.eps_eq * scale;
  }
}

}  // namespace

template <Scalar S>
bool is_quasinilpotent(const Matrix<S>& m, const Tolerance& tol) {
  if (!m.is_square()) throw DimensionError("quasinilpotency of non-square " + m.shape());
  return vanishes_scaled(pow(m, m.rows()), frobenius_norm(m), m.rows(), tol);
}

template <Scalar S>
std::optional<std::size_t> nilpotency_index(const Matrix<S>& m, const Tolerance& tol) {
  if (!m.is_square()) throw DimensionError("nilpotency of non-square " + m.shape());
  const double norm = frobenius_norm(m);
  Matrix<S> power = Matrix<S>::identity(m.rows());
  for (std::size_t v = 0; v <= m.rows(); ++v) {
    if (vanishes_scaled(power, norm, v, tol)) return v;
    power = power * m;
  }
  return std::nullopt;
}

ApproxMatrix drazin_pinv_oracle(const ApproxMatrix& m, const Tolerance& tol) {
  const std::size_t k = drazin_index(m, tol);
  ApproxMatrix mk = pow(m, k);
  return mk * pseudoinverse(pow(m, 2 * k + 1), tol) * mk;
}

template <Scalar S>
DrazinAxioms check_drazin_axioms(const Matrix<S>& a, const Matrix<S>& b, const Tolerance& tol) {
  DrazinAxioms ax;
  const std::size_t n = a.rows();
  Matrix<S> ab = a * b;
  Matrix<S> pi = Matrix<S>::identity(n) - ab;
  ax.reflexive = equal(b * ab, b, tol);
  ax.commuting = equal(ab, b * a, tol);
  ax.nilpotent_rest = is_quasinilpotent(a - a * ab, tol);
  ax.pi_idempotent = equal(pi * pi, pi, tol);
  ax.pi_commutes = equal(pi * a, a * pi, tol);
  ax.a_plus_pi_invertible = rank(a + pi, tol) == n;
  return ax;
}

#define GDRAZIN_INSTANTIATE(S)                                                                   \
  template std::size_t drazin_index(const Matrix<S>&, const Tolerance&);                         \
  template DrazinData<S> drazin(const Matrix<S>&, const Tolerance&);                             \
  template DrazinData<S> complete_drazin_data(const Matrix<S>&, Matrix<S>, const Tolerance&);    \
  template Matrix<S> spectral_idempotent(const Matrix<S>&, const Tolerance&);                    \
  template bool is_quasinilpotent(const Matrix<S>&, const Tolerance&);                           \
  template std::optional<std::size_t> nilpotency_index(const Matrix<S>&, const Tolerance&);      \
  template DrazinAxioms check_drazin_axioms(const Matrix<S>&, const Matrix<S>&, const Tolerance&);

GDRAZIN_INSTANTIATE(ExactScalar)
GDRAZIN_INSTANTIATE(ApproxScalar)

#undef GDRAZIN_INSTANTIATE

}  // namespace gdrazin
