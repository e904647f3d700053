#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

M oracle(const TheoremData<G>& data) { return drazin(target_matrix(data)).dinv; }

}  // namespace

TEST_CASE("pierce fixture gives the zero matrix") {
  Instance inst = fixture_shift_pierce();
  const auto& in = std::get<PierceInput<G>>(inst.data);
  FormulaResult<G> res = thm31_pierce(in.x, in.p);
  CHECK(res.value.is_zero());
  CHECK(res.value == oracle(inst.data));
  CHECK(drazin(in.x).index == 3);
}

TEST_CASE("block fixture gives the printed matrix, which is not the Drazin inverse") {
  Instance inst = fixture_block_2i();
  const auto& in = std::get<BlockInput<G>>(inst.data);
  M printed(6, 6);
  printed(0, 2) = G(-2);
  printed(1, 2) = G(-2);
  printed(2, 2) = G(2);
  CHECK(thm43_block(in).value == printed);
  M truth(6, 6);
  truth(0, 2) = G(-1);
  truth(1, 2) = G(-1);
  truth(2, 2) = G(1);
  CHECK(oracle(inst.data) == truth);
  // With single diagonal terms the block formula is the Drazin inverse.
  DrazinData<G> a = drazin(in.A), d = drazin(in.D);
  M single = assemble(a.dinv, a.dinv * a.dinv * in.B, d.dinv * d.dinv * in.C,
                      d.dinv + pow(d.dinv, 3) * in.C * in.B);
  CHECK(single == truth);
}

TEST_CASE("additive families equal the oracle") {
  for (Family f : {Family::G1, Family::G2, Family::G4}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      Instance inst = generate(config(f, seed, 2 + seed % 5));
      CAPTURE(inst.id);
      CHECK(apply_theorem<G>(inst.theorem, inst.data).value == oracle(inst.data));
    }
  }
}

TEST_CASE("pierce and block families equal the oracle on both routes") {
  for (Theorem t : {Theorem::T31, Theorem::C32, Theorem::T33, Theorem::C34, Theorem::T41, Theorem::C42}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Instance inst = generate(config(Family::G5, seed, 2 + seed % 5, t));
      CAPTURE(inst.id);
      M truth = oracle(inst.data);
      CHECK(apply_theorem<G>(t, inst.data).value == truth);
      if (is_corollary(t)) CHECK(apply_theorem<G>(t, inst.data, std::nullopt, {}, Route::delegated).value == truth);
    }
  }
}

TEST_CASE("block formulas with doubled diagonal terms hold when A and D are nilpotent") {
  M a = shift3(), d = shift3();
  M b{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}, c(3, 3);
  BlockInput<G> in{a, b, c, d};
  CHECK(thm43_block(in).value == oracle(in));
  CHECK(cor44_block(in).value == oracle(in));
  CHECK(cor44_block(in, std::nullopt, {}, Route::delegated).value == oracle(in));
}

TEST_CASE("hypothesis violations name the failing condition") {
  BlockInput<G> in{M{{1}}, M{{1}}, M{{1}}, M{{0}}};
  try {
    thm41_block(in);
    FAIL("expected a hypothesis violation");
  } catch (const HypothesisViolation& e) {
    CHECK(e.condition() == "BC = 0");
  }
  // Unchecked evaluation on such data is meaningless; here the series never vanishes.
  FormulaOptions opts;
  opts.unchecked = true;
  CHECK_THROWS_AS(thm41_block(in, std::nullopt, opts), SeriesCapExceeded);
  Instance inst = fixture_shift_pierce();
  const auto& p = std::get<PierceInput<G>>(inst.data);
  CHECK_THROWS_AS(thm31_pierce(p.x, p.p, G(1)), HypothesisViolation);
  CHECK_THROWS_AS(apply_theorem<G>(Theorem::T41, inst.data), DimensionError);
}

TEST_CASE("additive formula scales inversely") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Instance inst = generate(config(Family::G4, seed, 3 + seed % 4));
    const auto& in = std::get<AdditiveInput<G>>(inst.data);
    const G t(mpq_class(-3, 2), 1);
    M base = thm24_additive(in.a, in.b).value;
    CHECK(thm24_additive(t * in.a, t * in.b).value == t.inverse() * base);
  }
}

TEST_CASE("series stop at the first zero term without losing later terms") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = generate(config(Family::G2, seed, 2 + seed % 5));
    const auto& in = std::get<AdditiveInput<G>>(inst.data);
    const std::size_t n = in.a.rows();
    M bd = drazin(in.b).dinv;
    M full(n, n);
    for (std::size_t k = 0; k < 4 * n; ++k) full += pow(bd, k + 1) * pow(in.a, k);
    FormulaResult<G> res = lemma23_qnil_plus_gd(in.a, in.b);
    CHECK(res.value == full);
    for (const auto& [name, st] : res.series) {
      CHECK(st.terms <= n);
      CHECK_FALSE(st.capped);
    }
  }
}

TEST_CASE("the series cap is enforced") {
  std::optional<Instance> found;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    Instance inst = generate(config(Family::G2, seed, 6));
    const auto& in = std::get<AdditiveInput<G>>(inst.data);
    if (lemma23_qnil_plus_gd(in.a, in.b).series.at("sum").terms >= 2) found = inst;
  }
  REQUIRE(found);
  const auto& in = std::get<AdditiveInput<G>>(found->data);
  FormulaOptions opts;
  opts.series_cap = 1;
  CHECK_THROWS_AS(lemma23_qnil_plus_gd(in.a, in.b, std::nullopt, opts), SeriesCapExceeded);
}

TEST_CASE("approx backend formulas track the exact ones") {
  for (Family f : {Family::G2, Family::G4}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Instance inst = generate(config(f, seed, 2 + seed % 5));
      M exact = apply_theorem<G>(inst.theorem, inst.data).value;
      ApproxMatrix approx = apply_theorem<ApproxScalar>(inst.theorem, convert_data<ApproxScalar>(inst.data)).value;
      CHECK(max_abs_diff(to_approx(exact), approx) <= 1e-9);
    }
  }
}
