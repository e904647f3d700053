#pragma once

#include <optional>
#include <type_traits>

#include "gdrazin/conditions.hpp"
#include "gdrazin/drazin.hpp"
#include "gdrazin/theorem.hpp"

// Representation formulas. Every evaluator checks the theorem's hypotheses
// first (throwing HypothesisViolation naming the first failing condition)
// unless FormulaOptions::unchecked is set. `lambda` forces the scalar used by
// the check; by default it is detected from the data. Pierce formulas work in
// the compressed coordinates of a PierceFrame and return ambient matrices.

namespace gdrazin {

/// Which corner the off-diagonal block occupies in a triangular element.
///   lower: c = (1-p) x p, so x = (a 0; c b) about p
///   upper: c = p x (1-p), so x = (a c; 0 b) about p
enum class Orientation { lower, upper };

/// Drazin inverse of the triangular element a + b + c with a in pAp, b in
/// (1-p)A(1-p) and c in the corner given by `orientation`.
/// Throws ValueError when a block is not in its corner.
template <Scalar S>
FormulaResult<S> lemma21_triangular(const Matrix<S>& a, const Matrix<S>& b, const Matrix<S>& c,
                                    const Idempotent<S>& p, Orientation orientation,
                                    const FormulaOptions& opts = {});

/// (a+b)^d = sum_{n>=0} (b^d)^{n+1} a^n for quasinilpotent a.
template <Scalar S>
FormulaResult<S> lemma23_qnil_plus_gd(const Matrix<S>& a, const Matrix<S>& b, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                                      const FormulaOptions& opts = {});

/// (a+b)^d = b^pi a^d + b^d a^pi + sum_{n>=1} (b^d)^{n+1} a^n a^pi
///           + sum_{n>=0} b^pi (a+b)^n b (a^d)^{n+2}.
template <Scalar S>
FormulaResult<S> thm24_additive(const Matrix<S>& a, const Matrix<S>& b, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                                const FormulaOptions& opts = {});

template <Scalar S>
FormulaResult<S> thm31_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                              const FormulaOptions& opts = {});
template <Scalar S>
FormulaResult<S> cor32_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                              const FormulaOptions& opts = {}, Route route = Route::direct);
template <Scalar S>
FormulaResult<S> thm33_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                              const FormulaOptions& opts = {});
template <Scalar S>
FormulaResult<S> cor34_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                              const FormulaOptions& opts = {}, Route route = Route::direct);

/// M = (A B; C D) with A and D square.
template <Scalar S>
FormulaResult<S> thm41_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                             const FormulaOptions& opts = {});
template <Scalar S>
FormulaResult<S> cor42_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                             const FormulaOptions& opts = {}, Route route = Route::direct);
template <Scalar S>
FormulaResult<S> thm43_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                             const FormulaOptions& opts = {});
template <Scalar S>
FormulaResult<S> cor44_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                             const FormulaOptions& opts = {}, Route route = Route::direct);

/// Dispatches on `theorem`. `route` only matters for corollaries.
template <Scalar S>
FormulaResult<S> apply_theorem(Theorem theorem, const TheoremData<S>& data, std::optional<std::type_identity_t<S>> lambda = std::nullopt,
                               const FormulaOptions& opts = {}, Route route = Route::direct);

}  // namespace gdrazin
