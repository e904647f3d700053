#include "gdrazin/generators.hpp"

#include <algorithm>

#include "gdrazin/drazin.hpp"
#include "gdrazin/linalg.hpp"

namespace gdrazin {

namespace {

constexpr std::array<std::string_view, 5> kShort{"G1", "G2", "G3", "G4", "G5"};
constexpr std::array<std::string_view, 5> kLong{"G1_qcommuting_nilpotents", "G2_lemma23_blockform",
                                                "G3_paper_fixtures", "G4_thm24_blockform",
                                                "G5_block44_rejection"};

using G = GaussRational;
using M = ExactMatrix;

class Rng {
 public:
  Rng(const GeneratorConfig& cfg) : pool_(cfg.entry_pool) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(cfg.family), static_cast<std::uint32_t>(cfg.dim),
                      static_cast<std::uint32_t>(cfg.target ? static_cast<int>(*cfg.target) + 1 : 0)};
    eng_.seed(seq);
    for (const auto& v : pool_)
      if (!v.is_zero()) nonzero_.push_back(v);
    if (pool_.empty()) throw ValueError("entry pool is empty");
    if (nonzero_.empty()) throw ValueError("entry pool has no nonzero entry");
  }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(eng_); }
  const G& any() { return pool_[uniform(0, pool_.size() - 1)]; }
  const G& nonzero() { return nonzero_[uniform(0, nonzero_.size() - 1)]; }

  M sparse(std::size_t rows, std::size_t cols, double density) {
    M out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (chance(density)) out(i, j) = nonzero();
    return out;
  }

  /// Upper triangular with the given strict-upper density and diagonal density.
  M upper(std::size_t n, double density, double diag_density) {
    M out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (chance(i == j ? diag_density : density)) out(i, j) = nonzero();
    return out;
  }

  /// Superdiagonal weights, now and then a trailing diagonal entry.
  M shift_like(std::size_t n) {
    M out(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (chance(0.8)) out(i, i + 1) = nonzero();
    if (n > 0 && chance(0.3)) out(n - 1, n - 1) = nonzero();
    return out;
  }

  M structured(std::size_t n) { return chance(0.5) ? shift_like(n) : upper(n, 0.6, 0.2); }

  /// L U with unit-diagonal L and a nonzero-diagonal U.
  M invertible(std::size_t n, bool unit) {
    M l = M::identity(n), u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      u(i, i) = unit ? G(1) : nonzero();
      for (std::size_t j = i + 1; j < n; ++j) {
        if (chance(0.5)) u(i, j) = any();
        if (chance(0.5)) l(j, i) = any();
      }
    }
    return l * u;
  }

 private:
  std::mt19937_64 eng_;
  std::vector<G> pool_, nonzero_;
};

struct Conjugator {
  M t, t_inv;
  explicit Conjugator(Rng& rng, std::size_t n) : t(rng.invertible(n, true)), t_inv(inverse(t)) {}
  M operator()(const M& x) const { return t * x * t_inv; }
};

M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

M diag_blocks(const M& a, const M& d) { return assemble(a, M(a.rows(), d.cols()), M(d.rows(), a.cols()), d); }

G pick_lambda(const GeneratorConfig& cfg, Rng& rng) {
  if (cfg.lambda) {
    if (cfg.lambda->is_zero()) throw ValueError("lambda must be nonzero");
    return *cfg.lambda;
  }
  return rng.nonzero();
}

/// (a, b) = (S_w, S_v) with S_w S_v = lambda S_v S_w.
std::pair<M, M> qcommuting_shifts(std::size_t n, const G& lambda, Rng& rng) {
  if (n < 2) return {M(n, n), M(n, n)};
  std::vector<G> v(n - 1), w(n - 1);
  for (auto& x : v) x = rng.nonzero();
  w[0] = rng.nonzero();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) w[i + 1] = lambda * v[i + 1] * w[i] / v[i];
  return {weighted_shift(w), weighted_shift(v)};
}

/// The strictly block-upper pair behind G2, before any conjugation.
std::pair<M, M> g2_pair(std::size_t n, const G& lambda, Rng& rng) {
  // Shift products vanish below size 3, so keep the nilpotent part large.
  const std::size_t r = rng.uniform(0, n / 2), m = n - r;
  auto [a4, b2] = qcommuting_shifts(m, lambda, rng);
  M b1 = rng.invertible(r, false);
  M a2(r, m);
  for (std::size_t i = 0; i < r; ++i)
    if (rng.chance(0.7)) a2(i, 0) = rng.any();
  M a = assemble(M(r, r), a2, M(m, r), a4);
  return {a, diag_blocks(b1, b2)};
}

Instance finish(Instance inst, const Tolerance& tol = {}) {
  HypothesisReport<G> rep = check_hypotheses<G>(inst.theorem, inst.data, std::nullopt, tol);
  if (!rep.holds)
    throw Error("generated " + to_string(inst.family) + " instance violates " + to_string(inst.theorem) + ": " +
                rep.first_failure());
  inst.lambda = rep.lambda;
  return inst;
}

std::string make_id(const GeneratorConfig& cfg, Theorem t) {
  return to_string(cfg.family) + "-" + to_string(t) + "-n" + std::to_string(cfg.dim) + "-s" + std::to_string(cfg.seed);
}

Instance gen_g1(const GeneratorConfig& cfg, Rng& rng) {
  const G lambda = pick_lambda(cfg, rng);
  auto [a, b] = qcommuting_shifts(cfg.dim, lambda, rng);
  return finish({make_id(cfg, Theorem::L23), Family::G1, Theorem::L23, AdditiveInput<G>{a, b}, {}, cfg.seed, 1});
}

Instance gen_g2(const GeneratorConfig& cfg, Rng& rng) {
  const G lambda = pick_lambda(cfg, rng);
  auto [a, b] = g2_pair(cfg.dim, lambda, rng);
  Conjugator s(rng, cfg.dim);
  return finish(
      {make_id(cfg, Theorem::L23), Family::G2, Theorem::L23, AdditiveInput<G>{s(a), s(b)}, {}, cfg.seed, 1});
}

Instance gen_g4(const GeneratorConfig& cfg, Rng& rng) {
  const G lambda = pick_lambda(cfg, rng);
  const std::size_t r = rng.uniform(1, std::max<std::size_t>(1, cfg.dim / 2)), m = cfg.dim - r;
  M a1 = rng.invertible(r, false);
  auto [a2, b2] = g2_pair(m, lambda, rng);
  DrazinData<G> bd = drazin(b2);
  // b1 must solve a2 b1 + lambda b2^pi b2 a2 b2^d b1 - lambda b2^pi b1 a1 = 0.
  M left = a2 + lambda * bd.pi * b2 * a2 * bd.dinv;
  M op = kron(M::identity(r), left) - lambda * kron(transpose(a1), bd.pi);
  M basis = subspace_bases(op).kernel;
  M b1(m, r);
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    const G coef = rng.any();
    if (coef.is_zero()) continue;
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < m; ++i) b1(i, j) += coef * basis(j * m + i, k);
  }
  M a = diag_blocks(a1, a2);
  M b = assemble(M(r, r), M(r, m), b1, b2);
  Conjugator s(rng, cfg.dim);
  return finish({make_id(cfg, Theorem::T24), Family::G4, Theorem::T24, AdditiveInput<G>{s(a), s(b)}, {}, cfg.seed, 1});
}

Theorem base_theorem(Theorem t) {
  switch (t) {
    case Theorem::C32: return Theorem::T31;
    case Theorem::C34: return Theorem::T33;
    case Theorem::C42: return Theorem::T41;
    case Theorem::C44: return Theorem::T43;
    default: return t;
  }
}

Instance gen_g5(const GeneratorConfig& cfg, Rng& rng) {
  const Theorem target = cfg.target.value_or(Theorem::T41);
  if (layout_of(target) == Layout::additive)
    throw ValueError("G5 generates Pierce and block instances, not " + to_string(target));
  const Theorem base = base_theorem(target);
  const bool block = layout_of(base) == Layout::block;
  // Instances whose lambda conditions all read 0 = 0 are kept only occasionally,
  // and freely once half the budget is spent.
  std::size_t attempt = 0;
  auto skip_vacuous = [&](const HypothesisReport<G>& rep) {
    return rep.vacuous && attempt <= cfg.budget / 2 && !rng.chance(0.05);
  };
  for (attempt = 1; attempt <= cfg.budget; ++attempt) {
    const std::size_t r = rng.uniform(1, cfg.dim - 1), m = cfg.dim - r;
    M A = rng.structured(r), D = rng.structured(m);
    M B = rng.sparse(r, m, 0.3), C = rng.sparse(m, r, 0.3);
    if (B.is_zero() && C.is_zero()) continue;
    if (block) {
      if (!(B * C).is_zero()) continue;
      BlockInput<G> in{A, B, C, D};
      HypothesisReport<G> rep = check_hypotheses<G>(base, in);
      if (!rep.holds || skip_vacuous(rep)) continue;
      Instance inst{make_id(cfg, target), Family::G5, base, in, rep.lambda, cfg.seed, attempt};
      if (target != base) inst = flip_instance(inst);
      inst.id = make_id(cfg, target);
      return finish(inst);
    }
    M x = assemble(A, B, C, D);
    M p = diag_blocks(M::identity(r), M(m, m));
    if (cfg.conjugate) {
      Conjugator s(rng, cfg.dim);
      x = s(x);
      p = s(p);
    }
    PierceInput<G> in{x, Idempotent<G>(p)};
    HypothesisReport<G> rep = check_hypotheses<G>(base, in);
    if (!rep.holds || skip_vacuous(rep)) continue;
    Instance inst{make_id(cfg, target), Family::G5, base, in, rep.lambda, cfg.seed, attempt};
    if (target != base) inst = flip_instance(inst);
    inst.id = make_id(cfg, target);
    return finish(inst);
  }
  throw GeneratorBudgetExhausted("G5 found no " + to_string(target) + " instance of size " + std::to_string(cfg.dim) +
                                 " in " + std::to_string(cfg.budget) + " attempts");
}

}  // namespace

std::string to_string(Family f) { return std::string(kShort[static_cast<std::size_t>(f)]); }

Family family_from_string(std::string_view s) {
  for (std::size_t k = 0; k < kShort.size(); ++k)
    if (s == kShort[k] || s == kLong[k]) return static_cast<Family>(k);
  throw ParseError("unknown family '" + std::string(s) + "'");
}

std::vector<GaussRational> default_entry_pool() {
  const G i = G::i();
  return {G(0), G(1), G(-1), G(2), G(-2), i, -i, G(2) * i, G(-2) * i};
}

template <Scalar S>
Matrix<S> weighted_shift(const std::vector<S>& weights) {
  const std::size_t n = weights.size() + 1;
  Matrix<S> out(n, n);
  for (std::size_t i = 0; i < weights.size(); ++i) out(i + 1, i) = weights[i];
  return out;
}

Instance fixture_shift_pierce() {
  const M shift{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  const M b{{0, 2, 0}, {0, 0, 1}, {0, 0, 0}};
  const M c{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}};
  M x = assemble(shift, b, c, shift);
  Idempotent<G> p = coordinate_idempotent<G>(6, {0, 1, 2});
  Instance inst{"G3-shift-pierce", Family::G3, Theorem::T31, PierceInput<G>{x, p}, {}, 0, 1};
  return finish(inst);
}

Instance fixture_block_2i() {
  const G i = G::i();
  BlockInput<G> in{M{{0, 1, 0}, {0, 0, -1}, {0, 0, 1}}, M{{0, 2, 0}, {0, 0, 1}, {0, 0, 0}},
                   M{{0, 1, 1}, {0, 0, 0}, {0, 0, 0}}, M{{0, i, 0}, {0, 0, i}, {0, 0, 0}}};
  Instance inst{"G3-block-2i", Family::G3, Theorem::T43, in, {}, 0, 1};
  return finish(inst);
}

Instance flip_instance(const Instance& in) {
  Instance out = in;
  switch (in.theorem) {
    case Theorem::T31: out.theorem = Theorem::C32; break;
    case Theorem::T33: out.theorem = Theorem::C34; break;
    case Theorem::T41: out.theorem = Theorem::C42; break;
    case Theorem::T43: out.theorem = Theorem::C44; break;
    default: throw ValueError(to_string(in.theorem) + " has no flipped counterpart");
  }
  if (const auto* p = std::get_if<PierceInput<G>>(&in.data)) {
    out.data = PierceInput<G>{p->x, p->p.complement()};
  } else {
    const auto& b = std::get<BlockInput<G>>(in.data);
    out.data = BlockInput<G>{b.D, b.C, b.B, b.A};
  }
  out.id = in.id + "-flip";
  return out;
}

Instance generate(const GeneratorConfig& cfg) {
  if (cfg.family != Family::G3 && cfg.dim < 2) throw ValueError("dim must be at least 2");
  if (cfg.family == Family::G3) {
    return cfg.target == Theorem::T31 ? fixture_shift_pierce() : fixture_block_2i();
  }
  Rng rng(cfg);
  switch (cfg.family) {
    case Family::G1: return gen_g1(cfg, rng);
    case Family::G2: return gen_g2(cfg, rng);
    case Family::G4: return gen_g4(cfg, rng);
    default: return gen_g5(cfg, rng);
  }
}

template <Scalar S>
TheoremData<S> convert_data(const TheoremData<ExactScalar>& data) {
  return std::visit(
      [](const auto& in) -> TheoremData<S> {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, AdditiveInput<G>>) {
          return AdditiveInput<S>{from_exact<S>(in.a), from_exact<S>(in.b)};
        } else if constexpr (std::is_same_v<T, PierceInput<G>>) {
          return PierceInput<S>{from_exact<S>(in.x), Idempotent<S>(from_exact<S>(in.p.matrix()))};
        } else {
          return BlockInput<S>{from_exact<S>(in.A), from_exact<S>(in.B), from_exact<S>(in.C), from_exact<S>(in.D)};
        }
      },
      data);
}

template Matrix<ExactScalar> weighted_shift(const std::vector<ExactScalar>&);
template Matrix<ApproxScalar> weighted_shift(const std::vector<ApproxScalar>&);
template TheoremData<ExactScalar> convert_data(const TheoremData<ExactScalar>&);
template TheoremData<ApproxScalar> convert_data(const TheoremData<ExactScalar>&);

}  // namespace gdrazin
