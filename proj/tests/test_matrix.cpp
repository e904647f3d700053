#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

TEST_CASE("shape checks") {
  CHECK_THROWS_AS(M(2, 2, std::vector<G>(3)), DimensionError);
  CHECK_THROWS_AS(M(2, 3) * M(2, 3), DimensionError);
  CHECK_THROWS_AS(M(2, 2) + M(3, 3), DimensionError);
  CHECK_THROWS_AS(ApproxMatrix(1, 1, {ApproxScalar(std::nan(""), 0)}), ValueError);
  M empty(0, 0);
  CHECK(empty.is_square());
  CHECK((empty * empty).rows() == 0);
}

TEST_CASE("ring identities on random pool matrices") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 5;
    M a = random_pool_matrix(rng, n, n), b = random_pool_matrix(rng, n, n), c = random_pool_matrix(rng, n, n);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(pow(a, 2) * pow(a, 3) == pow(a, 5));
    CHECK(pow(a, 0) == M::identity(n));
    CHECK(transpose(transpose(a)) == a);
    CHECK(M::identity(n) * a == a);
  }
}

TEST_CASE("block assembly and extraction") {
  std::mt19937_64 rng(3);
  M a = random_pool_matrix(rng, 2, 2), b = random_pool_matrix(rng, 2, 3), c = random_pool_matrix(rng, 3, 2),
    d = random_pool_matrix(rng, 3, 3);
  M x = assemble(a, b, c, d);
  CHECK(x.block(0, 0, 2, 2) == a);
  CHECK(x.block(0, 2, 2, 3) == b);
  CHECK(x.block(2, 0, 3, 2) == c);
  CHECK(x.block(2, 2, 3, 3) == d);
  auto blk = Blocks<G>::split(x, 2);
  CHECK(blk.assembled() == x);
  CHECK(blk.flipped().flipped().assembled() == x);
  // Block multiplication agrees with the ambient product.
  M y = random_pool_matrix(rng, 5, 5);
  auto yb = Blocks<G>::split(y, 2);
  M prod = assemble(a * yb.a + b * yb.c, a * yb.b + b * yb.d, c * yb.a + d * yb.c, c * yb.b + d * yb.d);
  CHECK(prod == x * y);
  CHECK_THROWS_AS(assemble(a, b, d, c), DimensionError);
}

TEST_CASE("approx helpers") {
  M e{{1, 2}, {I(), 0}};
  ApproxMatrix a = to_approx(e);
  CHECK(a(1, 0) == ApproxScalar(0, 1));
  CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(6.0)));
  CHECK(max_abs(a) == doctest::Approx(2.0));
  ApproxMatrix b = a;
  b(0, 0) += ApproxScalar(1e-12, 0);
  CHECK(equal(a, b, Tolerance{}));
  CHECK_FALSE(a == b);
}

TEST_CASE("power cache") {
  M n = shift3();
  PowerCache<G> p(n);
  CHECK(p(2) == n * n);
  const M& third = p(3);
  p(10);
  CHECK(third.is_zero());
  CHECK(p(0) == M::identity(3));
}
