#include "gdrazin/conditions.hpp"

#include <functional>
#include <limits>
#include <memory>

#include "kernels.hpp"

namespace gdrazin {

template <Scalar S>
LambdaSolution<S> check_lambda_equation(const Matrix<S>& lhs, const Matrix<S>& rhs, const Tolerance& tol) {
  using T = ScalarTraits<S>;
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw DimensionError("lambda equation between " + lhs.shape() + " and " + rhs.shape());
  LambdaSolution<S> out;
  const bool rhs_zero = is_zero(rhs, tol);
  if (rhs_zero) {
    if (is_zero(lhs, tol)) {
      out.vacuous = true;
      out.lambda = T::one();
    }
    return out;
  }
  auto l = lhs.entries();
  auto r = rhs.entries();
  std::size_t pick = 0;
  if constexpr (is_exact_v<S>) {
    while (r[pick].is_zero()) ++pick;
  } else {
    for (std::size_t k = 1; k < r.size(); ++k)
      if (std::abs(r[k]) > std::abs(r[pick])) pick = k;
  }
  S lambda = l[pick] / r[pick];
  if (T::is_zero(lambda, 0.0)) return out;
  if (!equal(lhs, lambda * rhs, tol)) return out;
  out.lambda = lambda;
  return out;
}

namespace {

template <Scalar S>
double residual_of(const Matrix<S>& m) {
  if constexpr (is_exact_v<S>) {
    return m.is_zero() ? 0.0 : 1.0;
  } else {
    return max_abs(m);
  }
}

template <Scalar S>
struct Condition {
  enum class Kind { zero, lambda_eq, lambda_zero, flag };
  std::string name;
  Kind kind;
  std::function<Matrix<S>()> matrix;              // zero
  std::function<Matrix<S>()> lhs, rhs;            // lambda_eq: lhs = lambda * rhs
  std::function<Matrix<S>(const S&)> with_lambda;  // lambda_zero
  std::function<bool()> flag;
};

template <Scalar S>
Condition<S> zero_cond(std::string name, std::function<Matrix<S>()> f) {
  Condition<S> c{std::move(name), Condition<S>::Kind::zero, std::move(f), {}, {}, {}, {}};
  return c;
}
template <Scalar S>
Condition<S> lambda_cond(std::string name, std::function<Matrix<S>()> lhs, std::function<Matrix<S>()> rhs) {
  Condition<S> c{std::move(name), Condition<S>::Kind::lambda_eq, {}, std::move(lhs), std::move(rhs), {}, {}};
  return c;
}
template <Scalar S>
Condition<S> lambda_zero_cond(std::string name, std::function<Matrix<S>(const S&)> f) {
  Condition<S> c{std::move(name), Condition<S>::Kind::lambda_zero, {}, {}, {}, std::move(f), {}};
  return c;
}

// Evaluates a condition that needs a series; a series that never reaches a
// zero term means the condition cannot be confirmed.
template <Scalar S>
ConditionResult guarded(const std::string& name, const std::function<Matrix<S>()>& f, const Tolerance& tol) {
  try {
    Matrix<S> m = f();
    return {name, residual_of(m), is_zero(m, tol)};
  } catch (const SeriesCapExceeded&) {
    return {name, std::numeric_limits<double>::infinity(), false};
  }
}

template <Scalar S>
HypothesisReport<S> evaluate(Theorem theorem, std::vector<Condition<S>>& conds, std::optional<S> forced,
                             const Tolerance& tol) {
  HypothesisReport<S> rep;
  rep.theorem = theorem;
  rep.lambda_forced = forced.has_value();
  rep.conditions.resize(conds.size());

  std::optional<std::type_identity_t<S>> lambda = forced;
  bool all_vacuous = true;
  bool lambda_failed = false;
  for (std::size_t k = 0; k < conds.size(); ++k) {
    auto& c = conds[k];
    if (c.kind != Condition<S>::Kind::lambda_eq) continue;
    Matrix<S> lhs = c.lhs();
    Matrix<S> rhs = c.rhs();
    ConditionResult res{c.name, 0.0, false};
    if (lambda) {
      Matrix<S> diff = lhs - *lambda * rhs;
      res.residual = residual_of(diff);
      res.holds = is_zero(diff, tol);
      if (!(is_zero(lhs, tol) && is_zero(rhs, tol))) all_vacuous = false;
    } else {
      LambdaSolution<S> sol = check_lambda_equation(lhs, rhs, tol);
      if (sol.lambda && !sol.vacuous) {
        lambda = sol.lambda;
        all_vacuous = false;
        res.holds = true;
      } else if (sol.vacuous) {
        res.holds = true;
      } else {
        lambda_failed = true;
        res.residual = is_exact_v<S> ? 1.0 : max_abs(lhs);
      }
    }
    rep.conditions[k] = res;
  }
  rep.vacuous = all_vacuous && !lambda_failed;
  if (!lambda && !lambda_failed) lambda = ScalarTraits<S>::one();  // every lambda condition vacuous
  if (!lambda_failed) rep.lambda = lambda;

  const S lambda_for_rest = lambda.value_or(ScalarTraits<S>::one());
  for (std::size_t k = 0; k < conds.size(); ++k) {
    auto& c = conds[k];
    switch (c.kind) {
      case Condition<S>::Kind::lambda_eq:
        break;
      case Condition<S>::Kind::zero:
        rep.conditions[k] = guarded<S>(c.name, c.matrix, tol);
        break;
      case Condition<S>::Kind::lambda_zero:
        rep.conditions[k] = guarded<S>(c.name, [&] { return c.with_lambda(lambda_for_rest); }, tol);
        break;
      case Condition<S>::Kind::flag: {
        bool ok = c.flag();
        rep.conditions[k] = {c.name, ok ? 0.0 : 1.0, ok};
        break;
      }
    }
  }
  rep.holds = !lambda_failed;
  for (const auto& r : rep.conditions) rep.holds = rep.holds && r.holds;
  return rep;
}

template <Scalar S>
std::vector<Condition<S>> additive_conditions(Theorem theorem, const AdditiveInput<S>& in, const Tolerance& tol,
                                              std::shared_ptr<detail::Spectral<S>>& sa,
                                              std::shared_ptr<detail::Spectral<S>>& sb) {
  if (!in.a.is_square() || in.a.rows() != in.b.rows() || in.a.cols() != in.b.cols())
    throw DimensionError("additive theorems need two square matrices of equal size");
  sa = std::make_shared<detail::Spectral<S>>(in.a, tol);
  sb = std::make_shared<detail::Spectral<S>>(in.b, tol);
  auto A = sa;
  auto B = sb;
  std::vector<Condition<S>> out;
  if (theorem == Theorem::L23) {
    Condition<S> flag{"a quasinilpotent", Condition<S>::Kind::flag, {}, {}, {}, {}, [A, tol] {
                        return is_quasinilpotent(A->m, tol);
                      }};
    out.push_back(std::move(flag));
    out.push_back(lambda_cond<S>(
        "ab = lambda b^pi b a b^pi", [A, B] { return A->m * B->m; },
        [A, B] { return B->pi * B->m * A->m * B->pi; }));
  } else {
    out.push_back(lambda_cond<S>(
        "ab = lambda a^pi b^pi b a b^pi", [A, B] { return A->m * B->m; },
        [A, B] { return A->pi * B->pi * B->m * A->m * B->pi; }));
  }
  return out;
}

template <Scalar S>
struct PierceBlocksSpectral {
  Blocks<S> blk;
  detail::Spectral<S> a, d;
  PierceBlocksSpectral(Blocks<S> b, const Tolerance& tol) : blk(std::move(b)), a(blk.a, tol), d(blk.d, tol) {}
};

template <Scalar S>
std::vector<Condition<S>> pierce_conditions(Theorem theorem, const PierceInput<S>& in, const Tolerance& tol,
                                            std::shared_ptr<PierceBlocksSpectral<S>>& holder) {
  if (in.x.rows() != in.p.size() || in.x.cols() != in.p.size())
    throw DimensionError("Pierce theorems need x and p of the same size");
  PierceFrame<S> frame(in.p, tol);
  holder = std::make_shared<PierceBlocksSpectral<S>>(frame.compress(in.x), tol);
  auto H = holder;
  const std::size_t cap = 4 * std::max<std::size_t>(in.x.rows(), 1);
  detail::SeriesContext ctx(tol, cap, nullptr);
  std::vector<Condition<S>> out;
  switch (theorem) {
    case Theorem::T31:
      out.push_back(zero_cond<S>("a^pi b c = 0", [H] { return H->a.pi * H->blk.b * H->blk.c; }));
      out.push_back(lambda_cond<S>(
          "a^pi b d = lambda a b", [H] { return H->a.pi * H->blk.b * H->blk.d; },
          [H] { return H->blk.a * H->blk.b; }));
      out.push_back(lambda_zero_cond<S>("c b + lambda^2 sum (d^d)^(n+1) c a^(n+1) b = 0", [H, ctx](const S& lam) {
        const auto& bb = H->blk.b;
        const auto& cc = H->blk.c;
        Matrix<S> s = ctx.sum<S>("cond", 0, cc.rows(), bb.cols(), [&](std::size_t n) {
          return H->d.dpow(n + 1) * cc * H->a.pow(n + 1) * bb;
        });
        return cc * bb + (lam * lam) * s;
      }));
      break;
    case Theorem::C32:
      out.push_back(zero_cond<S>("d^pi c b = 0", [H] { return H->d.pi * H->blk.c * H->blk.b; }));
      out.push_back(lambda_cond<S>(
          "d^pi c a = lambda d c", [H] { return H->d.pi * H->blk.c * H->blk.a; },
          [H] { return H->blk.d * H->blk.c; }));
      out.push_back(lambda_zero_cond<S>("b c + lambda^2 sum (a^d)^(n+1) b d^(n+1) c = 0", [H, ctx](const S& lam) {
        const auto& bb = H->blk.b;
        const auto& cc = H->blk.c;
        Matrix<S> s = ctx.sum<S>("cond", 0, bb.rows(), cc.cols(), [&](std::size_t n) {
          return H->a.dpow(n + 1) * bb * H->d.pow(n + 1) * cc;
        });
        return bb * cc + (lam * lam) * s;
      }));
      break;
    case Theorem::T33:
      out.push_back(lambda_cond<S>(
          "a^pi a b d^pi = lambda b d", [H] { return H->a.pi * H->blk.a * H->blk.b * H->d.pi; },
          [H] { return H->blk.b * H->blk.d; }));
      out.push_back(zero_cond<S>("d^pi c b = (c a^d + d u) a b", [H, ctx] {
        Matrix<S> u = detail::triangular_corner(H->d, H->a, H->blk.c, ctx, "u");
        return H->d.pi * H->blk.c * H->blk.b - (H->blk.c * H->a.dinv + H->blk.d * u) * H->blk.a * H->blk.b;
      }));
      out.push_back(zero_cond<S>("sum b d^n c (a^d)^n = 0", [H, ctx] {
        return ctx.sum<S>("cond", 0, H->blk.b.rows(), H->blk.c.cols(), [&](std::size_t n) {
          return H->blk.b * H->d.pow(n) * H->blk.c * H->a.dpow(n);
        });
      }));
      break;
    case Theorem::C34:
      out.push_back(lambda_cond<S>(
          "d^pi d c a^pi = lambda c a", [H] { return H->d.pi * H->blk.d * H->blk.c * H->a.pi; },
          [H] { return H->blk.c * H->blk.a; }));
      out.push_back(zero_cond<S>("a^pi b c = (b d^d + a u) d c", [H, ctx] {
        Matrix<S> u = detail::triangular_corner(H->a, H->d, H->blk.b, ctx, "u");
        return H->a.pi * H->blk.b * H->blk.c - (H->blk.b * H->d.dinv + H->blk.a * u) * H->blk.d * H->blk.c;
      }));
      out.push_back(zero_cond<S>("sum c a^n b (d^d)^n = 0", [H, ctx] {
        return ctx.sum<S>("cond", 0, H->blk.c.rows(), H->blk.b.cols(), [&](std::size_t n) {
          return H->blk.c * H->a.pow(n) * H->blk.b * H->d.dpow(n);
        });
      }));
      break;
    default:
      throw DimensionError(to_string(theorem) + " is not a Pierce theorem");
  }
  return out;
}

template <Scalar S>
std::vector<Condition<S>> block_conditions(Theorem theorem, const BlockInput<S>& in, const Tolerance& tol,
                                           std::shared_ptr<detail::Spectral<S>>& sa,
                                           std::shared_ptr<detail::Spectral<S>>& sd) {
  if (!in.A.is_square() || !in.D.is_square() || in.B.rows() != in.A.rows() || in.B.cols() != in.D.cols() ||
      in.C.rows() != in.D.rows() || in.C.cols() != in.A.cols())
    throw DimensionError("block theorems need square A, D and conforming B, C");
  sa = std::make_shared<detail::Spectral<S>>(in.A, tol);
  sd = std::make_shared<detail::Spectral<S>>(in.D, tol);
  auto A = sa;
  auto D = sd;
  const Matrix<S> B = in.B;
  const Matrix<S> C = in.C;
  std::vector<Condition<S>> out;
  const bool bc_form = theorem == Theorem::T41 || theorem == Theorem::T43;
  if (bc_form) {
    out.push_back(zero_cond<S>("BC = 0", [B, C] { return B * C; }));
  } else {
    out.push_back(zero_cond<S>("CB = 0", [B, C] { return C * B; }));
  }
  if (theorem == Theorem::T41 || theorem == Theorem::C42) {
    out.push_back(lambda_cond<S>(
        "AB = lambda A^pi B D", [A, B] { return A->m * B; }, [A, B, D] { return A->pi * B * D->m; }));
    out.push_back(lambda_cond<S>(
        "DC = lambda D^pi C A", [D, C] { return D->m * C; }, [A, C, D] { return D->pi * C * A->m; }));
  } else {
    out.push_back(lambda_cond<S>(
        "BD = lambda A^pi A B D^pi", [B, D] { return B * D->m; },
        [A, B, D] { return A->pi * A->m * B * D->pi; }));
    out.push_back(lambda_cond<S>(
        "CA = lambda D^pi D C A^pi", [A, C] { return C * A->m; },
        [A, C, D] { return D->pi * D->m * C * A->pi; }));
  }
  return out;
}

}  // namespace

template <Scalar S>
HypothesisReport<S> check_hypotheses(Theorem theorem, const TheoremData<S>& data, std::optional<std::type_identity_t<S>> forced_lambda,
                                     const Tolerance& tol) {
  tol.validate();
  if (forced_lambda && ScalarTraits<S>::is_zero(*forced_lambda, 0.0))
    throw ValueError("lambda must be nonzero");
  const Layout layout = layout_of(theorem);
  std::vector<Condition<S>> conds;
  // Keep the spectral data alive for the lifetime of the condition closures.
  std::shared_ptr<detail::Spectral<S>> s1, s2;
  std::shared_ptr<PierceBlocksSpectral<S>> pierce_holder;
  if (layout == Layout::additive) {
    const auto* in = std::get_if<AdditiveInput<S>>(&data);
    if (!in) throw DimensionError(to_string(theorem) + " expects an additive pair (a, b)");
    conds = additive_conditions(theorem, *in, tol, s1, s2);
  } else if (layout == Layout::pierce) {
    const auto* in = std::get_if<PierceInput<S>>(&data);
    if (!in) throw DimensionError(to_string(theorem) + " expects a Pierce input (x, p)");
    conds = pierce_conditions(theorem, *in, tol, pierce_holder);
  } else {
    const auto* in = std::get_if<BlockInput<S>>(&data);
    if (!in) throw DimensionError(to_string(theorem) + " expects blocks (A, B, C, D)");
    conds = block_conditions(theorem, *in, tol, s1, s2);
  }
  HypothesisReport<S> rep = evaluate(theorem, conds, forced_lambda, tol);
  if (!forced_lambda) {
    rep.holds_at_unit_lambda = evaluate(theorem, conds, std::optional<S>(ScalarTraits<S>::one()), tol).holds;
  }
  return rep;
}

#define GDRAZIN_INSTANTIATE(S)                                                                          \
  template LambdaSolution<S> check_lambda_equation(const Matrix<S>&, const Matrix<S>&, const Tolerance&); \
  template HypothesisReport<S> check_hypotheses(Theorem, const TheoremData<S>&, std::optional<S>, const Tolerance&);

GDRAZIN_INSTANTIATE(ExactScalar)
GDRAZIN_INSTANTIATE(ApproxScalar)

#undef GDRAZIN_INSTANTIATE

}  // namespace gdrazin
