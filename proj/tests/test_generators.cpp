#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

TEST_CASE("weighted shifts q-commute when the weights solve the recurrence") {
  M a = weighted_shift<G>({G(1), G(2)});
  M b = weighted_shift<G>({G(1), G(1)});
  CHECK(a * b == G(2) * (b * a));
  CHECK(a * b == M{{0, 0, 0}, {0, 0, 0}, {2, 0, 0}});
}

TEST_CASE("G1 with a given lambda") {
  GeneratorConfig cfg = config(Family::G1, 9, 3);
  cfg.lambda = G(2);
  Instance inst = generate(cfg);
  const auto& in = std::get<AdditiveInput<G>>(inst.data);
  CHECK(in.a * in.b == G(2) * (in.b * in.a));
  CHECK(inst.lambda == G(2));
  cfg.lambda = G(0);
  CHECK_THROWS_AS(generate(cfg), ValueError);
}

TEST_CASE("every family passes its target check") {
  for (Family f : {Family::G1, Family::G2, Family::G4}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Instance inst = generate(config(f, seed, 2 + seed % 5));
      CAPTURE(inst.id);
      CHECK(check_hypotheses<G>(inst.theorem, inst.data).holds);
      CHECK(target_matrix(inst.data).rows() == 2 + seed % 5);
    }
  }
  for (Theorem t : {Theorem::T31, Theorem::C32, Theorem::T33, Theorem::C34, Theorem::T41, Theorem::C42,
                    Theorem::T43, Theorem::C44}) {
    Instance inst = generate(config(Family::G5, 1, 4, t));
    CHECK(inst.theorem == t);
    CHECK(check_hypotheses<G>(t, inst.data).holds);
  }
}

TEST_CASE("G2 instances have a nilpotent summand") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = generate(config(Family::G2, seed, 5));
    CHECK(is_quasinilpotent(std::get<AdditiveInput<G>>(inst.data).a));
  }
}

TEST_CASE("generation is deterministic") {
  for (Family f : {Family::G1, Family::G2, Family::G4, Family::G5}) {
    Instance a = generate(config(f, 42, 5, Theorem::T33));
    Instance b = generate(config(f, 42, 5, Theorem::T33));
    CHECK(target_matrix(a.data) == target_matrix(b.data));
    CHECK(bundle_to_json(a) == bundle_to_json(b));
  }
  CHECK_FALSE(target_matrix(generate(config(Family::G2, 1, 5)).data) ==
              target_matrix(generate(config(Family::G2, 2, 5)).data));
}

TEST_CASE("fixtures") {
  Instance block = generate(config(Family::G3, 123, 2));
  CHECK(block.theorem == Theorem::T43);
  CHECK(block.lambda == G(2) * I());
  Instance pierce = generate(config(Family::G3, 0, 2, Theorem::T31));
  CHECK(pierce.lambda == G(2));
  CHECK(std::get<PierceInput<G>>(pierce.data).p.is_coordinate());
}

TEST_CASE("G5 reports an exhausted budget and rejects additive targets") {
  GeneratorConfig cfg = config(Family::G5, 0, 4, Theorem::T41);
  cfg.budget = 0;
  CHECK_THROWS_AS(generate(cfg), GeneratorBudgetExhausted);
  CHECK_THROWS_AS(generate(config(Family::G5, 0, 4, Theorem::L23)), ValueError);
  CHECK_THROWS_AS(generate(config(Family::G1, 0, 1)), ValueError);
  GeneratorConfig empty = config(Family::G1, 0, 3);
  empty.entry_pool = {G(0)};
  CHECK_THROWS_AS(generate(empty), ValueError);
}

TEST_CASE("Pierce instances can be conjugated away from coordinates") {
  GeneratorConfig cfg = config(Family::G5, 7, 5, Theorem::T31);
  Instance moved = generate(cfg);
  cfg.conjugate = false;
  Instance plain = generate(cfg);
  CHECK(std::get<PierceInput<G>>(plain.data).p.is_coordinate());
  CHECK(check_hypotheses<G>(Theorem::T31, moved.data).holds);
}

TEST_CASE("family tags") {
  CHECK(family_from_string("G5_block44_rejection") == Family::G5);
  CHECK(family_from_string("G2") == Family::G2);
  CHECK(to_string(Family::G4) == "G4");
  CHECK_THROWS_AS(family_from_string("G9"), ParseError);
  CHECK(theorem_from_string("C44") == Theorem::C44);
  CHECK_THROWS_AS(theorem_from_string("T99"), ParseError);
}
