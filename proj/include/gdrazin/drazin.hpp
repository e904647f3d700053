#pragma once

#include <cstddef>
#include <optional>

#include "gdrazin/linalg.hpp"
#include "gdrazin/matrix.hpp"

// Over M_n(C) the generalized Drazin inverse is the classical Drazin inverse
// and quasinilpotent means nilpotent; everything here works in that setting.

namespace gdrazin {

/// Drazin inverse of a square matrix together with its spectral data.
template <Scalar S>
struct DrazinData {
  std::size_t index = 0;  // Drazin index k
  Matrix<S> dinv;         // A^D
  Matrix<S> pi;           // spectral idempotent I - A A^D
  Matrix<S> core;         // A^2 A^D
  Matrix<S> nil;          // A A^pi
};

/// Smallest k >= 0 with rank(m^k) == rank(m^{k+1}).
template <Scalar S>
std::size_t drazin_index(const Matrix<S>& m, const Tolerance& tol = {});

/// Core-nilpotent decomposition: with k the index, S = [range(m^k) | ker(m^k)]
/// block-diagonalises m into (C, N), C invertible and N nilpotent, and
/// A^D = S diag(C^{-1}, 0) S^{-1}. Throws RankAmbiguity on the approx
/// backend when any rank decision along the way is not clear-cut.
template <Scalar S>
DrazinData<S> drazin(const Matrix<S>& m, const Tolerance& tol = {});

/// Fills index/pi/core/nil for `m` given an already computed Drazin inverse.
template <Scalar S>
DrazinData<S> complete_drazin_data(const Matrix<S>& m, Matrix<S> dinv, const Tolerance& tol = {});

template <Scalar S>
Matrix<S> spectral_idempotent(const Matrix<S>& m, const Tolerance& tol = {});

/// Exact: m^n == 0. Approx: ||m^n||_F <= eps_eq * max(1, ||m||_F^n).
template <Scalar S>
bool is_quasinilpotent(const Matrix<S>& m, const Tolerance& tol = {});

/// Smallest v with m^v == 0 (within eps_eq on approx), or none.
template <Scalar S>
std::optional<std::size_t> nilpotency_index(const Matrix<S>& m, const Tolerance& tol = {});

/// Independent approx-only route: A^D = A^k (A^{2k+1})^+ A^k.
ApproxMatrix drazin_pinv_oracle(const ApproxMatrix& m, const Tolerance& tol = {});

/// Outcome of checking the defining Drazin conditions for a candidate inverse.
struct DrazinAxioms {
  bool reflexive = false;     // b a b == b
  bool commuting = false;     // a b == b a
  bool nilpotent_rest = false;  // a - a^2 b nilpotent
  bool pi_idempotent = false;
  bool pi_commutes = false;
  bool a_plus_pi_invertible = false;
  bool all() const {
    return reflexive && commuting && nilpotent_rest && pi_idempotent && pi_commutes && a_plus_pi_invertible;
  }
};

template <Scalar S>
DrazinAxioms check_drazin_axioms(const Matrix<S>& a, const Matrix<S>& b, const Tolerance& tol = {});

}  // namespace gdrazin
