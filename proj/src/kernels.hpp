#pragma once

// Building blocks shared by the hypothesis checks and the formula evaluators.

#include <string>

#include "gdrazin/drazin.hpp"
#include "gdrazin/errors.hpp"
#include "gdrazin/theorem.hpp"

namespace gdrazin::detail {

/// A square block with its Drazin inverse, spectral idempotent and cached powers.
template <Scalar S>
struct Spectral {
  PowerCache<S> pow;    // m^n
  PowerCache<S> dpow;   // (m^d)^n
  Matrix<S> m, dinv, pi;

  Spectral(const Matrix<S>& block, const Tolerance& tol)
      : Spectral(block, drazin(block, tol)) {}

 private:
  Spectral(const Matrix<S>& block, DrazinData<S> data)
      : pow(block), dpow(data.dinv), m(block), dinv(std::move(data.dinv)), pi(std::move(data.pi)) {}
};

/// Sums term(n) for n = start, start+1, ... and stops at the first zero term.
/// Throws SeriesCapExceeded when `cap` nonzero terms were summed without
/// reaching a zero one.
class SeriesContext {
 public:
  SeriesContext(const Tolerance& tol, std::size_t cap, SeriesLog* log) : tol_(tol), cap_(cap), log_(log) {}

  template <Scalar S, class Term>
  Matrix<S> sum(const std::string& name, std::size_t start, std::size_t rows, std::size_t cols, Term&& term) const {
    Matrix<S> acc(rows, cols);
    for (std::size_t k = 0;; ++k) {
      if (k >= cap_) {
        record(name, k, true);
        throw SeriesCapExceeded("series '" + name + "' still nonzero after " + std::to_string(k) + " terms");
      }
      Matrix<S> t = term(start + k);
      if (is_zero(t, tol_)) {
        record(name, k, false);
        return acc;
      }
      acc += t;
    }
  }

  const Tolerance& tol() const noexcept { return tol_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  void record(const std::string& name, std::size_t terms, bool capped) const {
    if (!log_) return;
    SeriesStat& s = (*log_)[name];
    s.terms = std::max(s.terms, terms);
    s.evaluations += 1;
    s.capped = s.capped || capped;
  }

  Tolerance tol_;
  std::size_t cap_;
  SeriesLog* log_;
};

/// Off-diagonal corner of the Drazin inverse of a block-triangular element
/// whose off-diagonal block c is multiplied by `left` from the left and by
/// `right` from the right:
///   z = sum_i (L^d)^{i+2} c R^i R^pi + sum_i L^pi L^i c (R^d)^{i+2} - L^d c R^d.
template <Scalar S>
Matrix<S> triangular_corner(Spectral<S>& left, Spectral<S>& right, const Matrix<S>& c, const SeriesContext& ctx,
                            const std::string& name) {
  const std::size_t rows = c.rows(), cols = c.cols();
  Matrix<S> first = ctx.sum<S>(name + ".core_series", 0, rows, cols, [&](std::size_t i) {
    return left.dpow(i + 2) * c * right.pow(i) * right.pi;
  });
  Matrix<S> second = ctx.sum<S>(name + ".nil_series", 0, rows, cols, [&](std::size_t i) {
    return left.pi * left.pow(i) * c * right.dpow(i + 2);
  });
  return first + second - left.dinv * c * right.dinv;
}

inline std::size_t effective_cap(const FormulaOptions& opts, std::size_t size) {
  return opts.series_cap ? opts.series_cap : 4 * std::max<std::size_t>(size, 1);
}

/// Splits a compressed result back into blocks about the complementary corner.
template <Scalar S>
Matrix<S> flip(const Matrix<S>& m, std::size_t first_block) {
  return Blocks<S>::split(m, first_block).flipped().assembled();
}

}  // namespace gdrazin::detail
