#include "gdrazin/formulas.hpp"

#include "kernels.hpp"

namespace gdrazin {

namespace {

using detail::SeriesContext;
using detail::Spectral;

template <Scalar S>
void require(Theorem t, const TheoremData<S>& data, std::optional<std::type_identity_t<S>> lambda, const FormulaOptions& opts) {
  if (opts.unchecked) return;
  HypothesisReport<S> rep = check_hypotheses(t, data, lambda, opts.tol);
  if (rep.holds) return;
  std::string failed = rep.first_failure();
  throw HypothesisViolation(to_string(t), failed.empty() ? "no common lambda" : failed);
}

template <Scalar S>
struct PierceWork {
  PierceFrame<S> frame;
  Blocks<S> blk;
  Spectral<S> a, d;
  PowerCache<S> x;
  std::size_t r, m;

  PierceWork(const Matrix<S>& xm, const Idempotent<S>& p, const Tolerance& tol)
      : frame(p, tol),
        blk(frame.compress(xm)),
        a(blk.a, tol),
        d(blk.d, tol),
        x(blk.assembled()),
        r(blk.a.rows()),
        m(blk.d.rows()) {}
};

template <Scalar S>
void check_pierce_shape(const Matrix<S>& x, const Idempotent<S>& p) {
  if (x.rows() != p.size() || x.cols() != p.size())
    throw DimensionError("x is " + x.shape() + " but p is " + p.matrix().shape());
}

template <Scalar S>
void check_block_shape(const BlockInput<S>& in) {
  if (!in.A.is_square() || !in.D.is_square() || in.B.rows() != in.A.rows() || in.B.cols() != in.D.cols() ||
      in.C.rows() != in.D.rows() || in.C.cols() != in.A.cols())
    throw DimensionError("blocks " + in.A.shape() + ", " + in.B.shape() + ", " + in.C.shape() + ", " +
                         in.D.shape() + " do not form a 2x2 block matrix");
}

template <Scalar S>
FormulaResult<S> t31(const Matrix<S>& xm, const Idempotent<S>& p, const FormulaOptions& opts) {
  PierceWork<S> w(xm, p, opts.tol);
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, xm.rows()), &res.series);
  auto& A = w.a;
  auto& D = w.d;
  const Matrix<S>& b = w.blk.b;
  const Matrix<S>& c = w.blk.c;
  const std::size_t r = w.r, m = w.m;

  Matrix<S> u = detail::triangular_corner(D, A, c, ctx, "u");
  Matrix<S> base = assemble(A.dinv, Matrix<S>(r, m), u, D.dinv);
  Matrix<S> tail = ctx.sum<S>("outer", 0, r + m, r + m, [&](std::size_t n) {
    Matrix<S> i1 = ctx.sum<S>("i.nil_series", 0, r, r, [&](std::size_t k) {
      return b * D.pi * D.pow(k) * c * A.dpow(n + k + 3);
    });
    Matrix<S> i2 = ctx.sum<S>("i.core_series", 0, r, r, [&](std::size_t k) {
      return b * D.dpow(n + k + 3) * c * A.pow(k) * A.pi;
    });
    Matrix<S> top_left = i1 - b * D.dinv * c * A.dpow(n + 2) + i2 - b * D.dpow(n + 2) * c * A.dinv;
    for (std::size_t k = 1; k <= n; ++k) top_left -= b * D.dpow(k + 1) * c * A.dpow(n + 2 - k);
    return w.x(n) * assemble(top_left, b * D.dpow(n + 2), Matrix<S>(m, r), Matrix<S>(m, m));
  });
  res.value = w.frame.expand(base + tail);
  return res;
}

template <Scalar S>
FormulaResult<S> c32_direct(const Matrix<S>& xm, const Idempotent<S>& p, const FormulaOptions& opts) {
  PierceWork<S> w(xm, p, opts.tol);
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, xm.rows()), &res.series);
  auto& A = w.a;
  auto& D = w.d;
  const Matrix<S>& b = w.blk.b;
  const Matrix<S>& c = w.blk.c;
  const std::size_t r = w.r, m = w.m;

  Matrix<S> u = detail::triangular_corner(A, D, b, ctx, "u");
  Matrix<S> base = assemble(A.dinv, u, Matrix<S>(m, r), D.dinv);
  Matrix<S> tail = ctx.sum<S>("outer", 0, r + m, r + m, [&](std::size_t n) {
    Matrix<S> i1 = ctx.sum<S>("i.nil_series", 0, m, m, [&](std::size_t k) {
      return c * A.pi * A.pow(k) * b * D.dpow(n + k + 3);
    });
    Matrix<S> i2 = ctx.sum<S>("i.core_series", 0, m, m, [&](std::size_t k) {
      return c * A.dpow(n + k + 3) * b * D.pow(k) * D.pi;
    });
    Matrix<S> bottom_right = i1 - c * A.dinv * b * D.dpow(n + 2) + i2 - c * A.dpow(n + 2) * b * D.dinv;
    for (std::size_t k = 1; k <= n; ++k) bottom_right -= c * A.dpow(k + 1) * b * D.dpow(n + 2 - k);
    return w.x(n) * assemble(Matrix<S>(r, r), Matrix<S>(r, m), c * A.dpow(n + 2), bottom_right);
  });
  res.value = w.frame.expand(base + tail);
  return res;
}

template <Scalar S>
FormulaResult<S> t33(const Matrix<S>& xm, const Idempotent<S>& p, const FormulaOptions& opts) {
  PierceWork<S> w(xm, p, opts.tol);
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, xm.rows()), &res.series);
  auto& A = w.a;
  auto& D = w.d;
  const Matrix<S>& b = w.blk.b;
  const Matrix<S>& c = w.blk.c;
  const std::size_t m = w.m;

  Matrix<S> u = detail::triangular_corner(D, A, c, ctx, "u");
  Matrix<S> i1 = ctx.sum<S>("i.nil_series", 0, m, m, [&](std::size_t n) {
    return D.pi * D.pow(n) * c * A.dpow(n + 3) * b;
  });
  Matrix<S> i2 = ctx.sum<S>("i.core_series", 0, m, m, [&](std::size_t n) {
    return D.dpow(n + 3) * c * A.pow(n) * A.pi * b;
  });
  Matrix<S> i = i1 - D.dinv * c * A.dpow(2) * b + i2 - D.dpow(2) * c * A.dinv * b;
  res.value = w.frame.expand(assemble(A.dinv, A.dpow(2) * b, u, D.dinv + i));
  return res;
}

template <Scalar S>
FormulaResult<S> c34_direct(const Matrix<S>& xm, const Idempotent<S>& p, const FormulaOptions& opts) {
  PierceWork<S> w(xm, p, opts.tol);
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, xm.rows()), &res.series);
  auto& A = w.a;
  auto& D = w.d;
  const Matrix<S>& b = w.blk.b;
  const Matrix<S>& c = w.blk.c;
  const std::size_t r = w.r;

  Matrix<S> u = detail::triangular_corner(A, D, b, ctx, "u");
  Matrix<S> i1 = ctx.sum<S>("i.nil_series", 0, r, r, [&](std::size_t n) {
    return A.pi * A.pow(n) * b * D.dpow(n + 3) * c;
  });
  Matrix<S> i2 = ctx.sum<S>("i.core_series", 0, r, r, [&](std::size_t n) {
    return A.dpow(n + 3) * b * D.pow(n) * D.pi * c;
  });
  Matrix<S> i = i1 - A.dinv * b * D.dpow(2) * c + i2 - A.dpow(2) * b * D.dinv * c;
  res.value = w.frame.expand(assemble(A.dinv + i, u, D.dpow(2) * c, D.dinv));
  return res;
}

// T41 and the direct C42 share one printed formula; only the hypotheses differ.
template <Scalar S>
FormulaResult<S> t41(const BlockInput<S>& in, const FormulaOptions& opts) {
  Spectral<S> A(in.A, opts.tol), D(in.D, opts.tol);
  const Matrix<S>& B = in.B;
  const Matrix<S>& C = in.C;
  const std::size_t r = in.A.rows(), m = in.D.rows();
  PowerCache<S> M(assemble(in.A, B, C, in.D));
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, r + m), &res.series);
  Matrix<S> base = assemble(A.dinv, B * D.dpow(2), C * A.dpow(2), D.dinv);
  Matrix<S> tail = ctx.sum<S>("outer", 1, r + m, r + m, [&](std::size_t n) {
    return M(n) * assemble(Matrix<S>(r, r), B * D.dpow(n + 2), C * A.dpow(n + 2), Matrix<S>(m, m));
  });
  res.value = base + tail;
  return res;
}

template <Scalar S>
FormulaResult<S> t43(const BlockInput<S>& in, const FormulaOptions& opts) {
  Spectral<S> A(in.A, opts.tol), D(in.D, opts.tol);
  const S two = ScalarTraits<S>::one() + ScalarTraits<S>::one();
  FormulaResult<S> res;
  res.value = assemble(two * A.dinv, A.dpow(2) * in.B, D.dpow(2) * in.C, two * D.dinv + D.dpow(3) * in.C * in.B);
  return res;
}

template <Scalar S>
FormulaResult<S> c44_direct(const BlockInput<S>& in, const FormulaOptions& opts) {
  Spectral<S> A(in.A, opts.tol), D(in.D, opts.tol);
  const S two = ScalarTraits<S>::one() + ScalarTraits<S>::one();
  FormulaResult<S> res;
  res.value = assemble(two * A.dinv + A.dpow(3) * in.B * in.C, A.dpow(2) * in.B, D.dpow(2) * in.C, two * D.dinv);
  return res;
}

template <Scalar S>
BlockInput<S> flipped(const BlockInput<S>& in) {
  return {in.D, in.C, in.B, in.A};
}

template <Scalar S>
FormulaResult<S> flip_back(FormulaResult<S> res, std::size_t first_block) {
  res.value = detail::flip(res.value, first_block);
  return res;
}

}  // namespace

template <Scalar S>
FormulaResult<S> lemma21_triangular(const Matrix<S>& a, const Matrix<S>& b, const Matrix<S>& c,
                                    const Idempotent<S>& p, Orientation orientation, const FormulaOptions& opts) {
  opts.tol.validate();
  const std::size_t n = p.size();
  for (const Matrix<S>* blk : {&a, &b, &c})
    if (blk->rows() != n || blk->cols() != n)
      throw DimensionError("block of shape " + blk->shape() + " for a " + p.matrix().shape() + " idempotent");
  const Matrix<S>& pm = p.matrix();
  const Matrix<S> q = Matrix<S>::identity(n) - pm;
  auto in_corner = [&](const Matrix<S>& blk, const Matrix<S>& left, const Matrix<S>& right, const char* name) {
    if (!equal(left * blk * right, blk, opts.tol))
      throw ValueError(std::string("block ") + name + " does not lie in its Pierce corner");
  };
  in_corner(a, pm, pm, "a");
  in_corner(b, q, q, "b");
  if (orientation == Orientation::lower) {
    in_corner(c, q, pm, "c");
  } else {
    in_corner(c, pm, q, "c");
  }

  PierceFrame<S> frame(p, opts.tol);
  Blocks<S> ba = frame.compress(a), bb = frame.compress(b), bc = frame.compress(c);
  Spectral<S> sa(ba.a, opts.tol), sb(bb.d, opts.tol);
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, n), &res.series);
  const std::size_t r = frame.rank(), m = n - r;
  if (orientation == Orientation::lower) {
    Matrix<S> z = detail::triangular_corner(sb, sa, bc.c, ctx, "z");
    res.value = frame.expand(assemble(sa.dinv, Matrix<S>(r, m), z, sb.dinv));
  } else {
    Matrix<S> z = detail::triangular_corner(sa, sb, bc.b, ctx, "z");
    res.value = frame.expand(assemble(sa.dinv, z, Matrix<S>(m, r), sb.dinv));
  }
  return res;
}

template <Scalar S>
FormulaResult<S> lemma23_qnil_plus_gd(const Matrix<S>& a, const Matrix<S>& b, std::optional<std::type_identity_t<S>> lambda,
                                      const FormulaOptions& opts) {
  require<S>(Theorem::L23, AdditiveInput<S>{a, b}, lambda, opts);
  Spectral<S> B(b, opts.tol);
  PowerCache<S> A(a);
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, a.rows()), &res.series);
  res.value = ctx.sum<S>("sum", 0, a.rows(), a.cols(), [&](std::size_t n) { return B.dpow(n + 1) * A(n); });
  return res;
}

template <Scalar S>
FormulaResult<S> thm24_additive(const Matrix<S>& a, const Matrix<S>& b, std::optional<std::type_identity_t<S>> lambda,
                                const FormulaOptions& opts) {
  require<S>(Theorem::T24, AdditiveInput<S>{a, b}, lambda, opts);
  Spectral<S> A(a, opts.tol), B(b, opts.tol);
  PowerCache<S> sum_pow(a + b);
  FormulaResult<S> res;
  SeriesContext ctx(opts.tol, detail::effective_cap(opts, a.rows()), &res.series);
  const std::size_t n = a.rows();
  Matrix<S> first = ctx.sum<S>("core_series", 1, n, n, [&](std::size_t k) { return B.dpow(k + 1) * A.pow(k) * A.pi; });
  Matrix<S> second = ctx.sum<S>("nil_series", 0, n, n, [&](std::size_t k) {
    return B.pi * sum_pow(k) * b * A.dpow(k + 2);
  });
  res.value = B.pi * A.dinv + B.dinv * A.pi + first + second;
  return res;
}

template <Scalar S>
FormulaResult<S> thm31_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda,
                              const FormulaOptions& opts) {
  check_pierce_shape(x, p);
  require<S>(Theorem::T31, PierceInput<S>{x, p}, lambda, opts);
  return t31(x, p, opts);
}

template <Scalar S>
FormulaResult<S> cor32_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda,
                              const FormulaOptions& opts, Route route) {
  check_pierce_shape(x, p);
  require<S>(Theorem::C32, PierceInput<S>{x, p}, lambda, opts);
  // About 1 - p the element has the mirrored block layout.
  return route == Route::delegated ? t31(x, p.complement(), opts) : c32_direct(x, p, opts);
}

template <Scalar S>
FormulaResult<S> thm33_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda,
                              const FormulaOptions& opts) {
  check_pierce_shape(x, p);
  require<S>(Theorem::T33, PierceInput<S>{x, p}, lambda, opts);
  return t33(x, p, opts);
}

template <Scalar S>
FormulaResult<S> cor34_pierce(const Matrix<S>& x, const Idempotent<S>& p, std::optional<std::type_identity_t<S>> lambda,
                              const FormulaOptions& opts, Route route) {
  check_pierce_shape(x, p);
  require<S>(Theorem::C34, PierceInput<S>{x, p}, lambda, opts);
  return route == Route::delegated ? t33(x, p.complement(), opts) : c34_direct(x, p, opts);
}

template <Scalar S>
FormulaResult<S> thm41_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda, const FormulaOptions& opts) {
  check_block_shape(m);
  require<S>(Theorem::T41, m, lambda, opts);
  return t41(m, opts);
}

template <Scalar S>
FormulaResult<S> cor42_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda, const FormulaOptions& opts,
                             Route route) {
  check_block_shape(m);
  require<S>(Theorem::C42, m, lambda, opts);
  if (route == Route::direct) return t41(m, opts);
  return flip_back(t41(flipped(m), opts), m.D.rows());
}

template <Scalar S>
FormulaResult<S> thm43_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda, const FormulaOptions& opts) {
  check_block_shape(m);
  require<S>(Theorem::T43, m, lambda, opts);
  return t43(m, opts);
}

template <Scalar S>
FormulaResult<S> cor44_block(const BlockInput<S>& m, std::optional<std::type_identity_t<S>> lambda, const FormulaOptions& opts,
                             Route route) {
  check_block_shape(m);
  require<S>(Theorem::C44, m, lambda, opts);
  if (route == Route::direct) return c44_direct(m, opts);
  return flip_back(t43(flipped(m), opts), m.D.rows());
}

template <Scalar S>
FormulaResult<S> apply_theorem(Theorem theorem, const TheoremData<S>& data, std::optional<std::type_identity_t<S>> lambda,
                               const FormulaOptions& opts, Route route) {
  auto additive = [&]() -> const AdditiveInput<S>& {
    if (const auto* in = std::get_if<AdditiveInput<S>>(&data)) return *in;
    throw DimensionError(to_string(theorem) + " expects an additive pair (a, b)");
  };
  auto pierce = [&]() -> const PierceInput<S>& {
    if (const auto* in = std::get_if<PierceInput<S>>(&data)) return *in;
    throw DimensionError(to_string(theorem) + " expects a Pierce input (x, p)");
  };
  auto block = [&]() -> const BlockInput<S>& {
    if (const auto* in = std::get_if<BlockInput<S>>(&data)) return *in;
    throw DimensionError(to_string(theorem) + " expects blocks (A, B, C, D)");
  };
  switch (theorem) {
    case Theorem::L23: return lemma23_qnil_plus_gd(additive().a, additive().b, lambda, opts);
    case Theorem::T24: return thm24_additive(additive().a, additive().b, lambda, opts);
    case Theorem::T31: return thm31_pierce(pierce().x, pierce().p, lambda, opts);
    case Theorem::C32: return cor32_pierce(pierce().x, pierce().p, lambda, opts, route);
    case Theorem::T33: return thm33_pierce(pierce().x, pierce().p, lambda, opts);
    case Theorem::C34: return cor34_pierce(pierce().x, pierce().p, lambda, opts, route);
    case Theorem::T41: return thm41_block(block(), lambda, opts);
    case Theorem::C42: return cor42_block(block(), lambda, opts, route);
    case Theorem::T43: return thm43_block(block(), lambda, opts);
    case Theorem::C44: return cor44_block(block(), lambda, opts, route);
  }
  throw ValueError("unknown theorem");
}

#define GDRAZIN_INSTANTIATE(S)                                                                                     \
  template FormulaResult<S> lemma21_triangular(const Matrix<S>&, const Matrix<S>&, const Matrix<S>&,               \
                                               const Idempotent<S>&, Orientation, const FormulaOptions&);          \
  template FormulaResult<S> lemma23_qnil_plus_gd(const Matrix<S>&, const Matrix<S>&, std::optional<S>,             \
                                                 const FormulaOptions&);                                           \
  template FormulaResult<S> thm24_additive(const Matrix<S>&, const Matrix<S>&, std::optional<S>,                   \
                                           const FormulaOptions&);                                                 \
  template FormulaResult<S> thm31_pierce(const Matrix<S>&, const Idempotent<S>&, std::optional<S>,                 \
                                         const FormulaOptions&);                                                   \
  template FormulaResult<S> cor32_pierce(const Matrix<S>&, const Idempotent<S>&, std::optional<S>,                 \
                                         const FormulaOptions&, Route);                                            \
  template FormulaResult<S> thm33_pierce(const Matrix<S>&, const Idempotent<S>&, std::optional<S>,                 \
                                         const FormulaOptions&);                                                   \
  template FormulaResult<S> cor34_pierce(const Matrix<S>&, const Idempotent<S>&, std::optional<S>,                 \
                                         const FormulaOptions&, Route);                                            \
  template FormulaResult<S> thm41_block(const BlockInput<S>&, std::optional<S>, const FormulaOptions&);            \
  template FormulaResult<S> cor42_block(const BlockInput<S>&, std::optional<S>, const FormulaOptions&, Route);     \
  template FormulaResult<S> thm43_block(const BlockInput<S>&, std::optional<S>, const FormulaOptions&);            \
  template FormulaResult<S> cor44_block(const BlockInput<S>&, std::optional<S>, const FormulaOptions&, Route);     \
  template FormulaResult<S> apply_theorem(Theorem, const TheoremData<S>&, std::optional<S>, const FormulaOptions&, \
                                          Route);

GDRAZIN_INSTANTIATE(ExactScalar)
GDRAZIN_INSTANTIATE(ApproxScalar)

#undef GDRAZIN_INSTANTIATE

}  // namespace gdrazin
