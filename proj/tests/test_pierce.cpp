#include <doctest.h>

#include "gdrazin/linalg.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

Idempotent<G> conjugated_idempotent(std::mt19937_64& rng, std::size_t n, std::size_t r) {
  M s = random_unimodular(rng, n);
  M p = assemble(M::identity(r), M(r, n - r), M(n - r, r), M(n - r, n - r));
  return Idempotent<G>(s * p * inverse(s));
}

}  // namespace

TEST_CASE("idempotents are validated") {
  CHECK_THROWS_AS(Idempotent<G>(M{{1, 1}, {0, 2}}), NotIdempotent);
  CHECK_THROWS_AS(Idempotent<G>(M(2, 3)), DimensionError);
  Idempotent<G> p(M{{1, 1}, {0, 0}});
  CHECK_FALSE(p.is_coordinate());
  CHECK(p.complement().matrix() == M{{0, -1}, {0, 1}});
  CHECK(coordinate_idempotent<G>(3, {0, 2}).is_coordinate());
  CHECK_THROWS_AS(coordinate_idempotent<G>(2, {5}), DimensionError);
}

TEST_CASE("split and join are inverse") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 2 + k % 5, r = 1 + k % (n - 1);
    Idempotent<G> p = conjugated_idempotent(rng, n, r);
    M x = random_pool_matrix(rng, n, n);
    PierceSplit<G> s = pierce_split(x, p);
    CHECK(pierce_join(s) == x);
    PierceFrame<G> frame(p);
    CHECK(frame.rank() == r);
    CHECK(frame.expand(frame.compress(x)) == x);
    // The compressed corner blocks multiply like the ambient ones.
    M y = random_pool_matrix(rng, n, n);
    auto cx = frame.compress(x), cy = frame.compress(y);
    CHECK(frame.compress(x * y).a == cx.a * cy.a + cx.b * cy.c);
    CHECK(frame.compress(p.matrix()).a == M::identity(r));
  }
}

TEST_CASE("join rejects blocks outside their corner") {
  Idempotent<G> p = coordinate_idempotent<G>(2, {0});
  PierceSplit<G> s = pierce_split(M{{1, 2}, {3, 4}}, p);
  s.b = M{{0, 0}, {1, 0}};
  CHECK_THROWS_AS(pierce_join(s), ValueError);
}

TEST_CASE("triangular elements match the oracle in both orientations") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 2 + k % 5, r = 1 + k % (n - 1);
    Idempotent<G> p = conjugated_idempotent(rng, n, r);
    PierceSplit<G> s = pierce_split(random_pool_matrix(rng, n, n), p);
    for (Orientation o : {Orientation::lower, Orientation::upper}) {
      const M& c = o == Orientation::lower ? s.c : s.b;
      M x = s.a + s.d + c;
      FormulaResult<G> res = lemma21_triangular(s.a, s.d, c, p, o);
      CAPTURE(k);
      CHECK(res.value == drazin(x).dinv);
    }
  }
  Idempotent<G> p = coordinate_idempotent<G>(2, {0});
  CHECK_THROWS_AS(lemma21_triangular(M{{1, 0}, {0, 0}}, M{{0, 0}, {0, 1}}, M{{0, 1}, {0, 0}}, p, Orientation::lower),
                  ValueError);
}
