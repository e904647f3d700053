#pragma once

#include <random>

#include "gdrazin/formulas.hpp"
#include "gdrazin/generators.hpp"
#include "gdrazin/io.hpp"
#include "gdrazin/linalg.hpp"

namespace testing_support {

using namespace gdrazin;
using G = GaussRational;
using M = ExactMatrix;

inline G I() { return G::i(); }

/// Random matrix over the default pool with a random zero mask.
inline M random_pool_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  static const std::vector<G> pool = default_entry_pool();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const double density = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
  std::bernoulli_distribution keep(density);
  M out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (keep(rng)) out(i, j) = pool[pick(rng)];
  return out;
}

inline M random_unimodular(std::mt19937_64& rng, std::size_t n) {
  M l = M::identity(n), u = M::identity(n);
  std::uniform_int_distribution<int> v(-1, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      l(j, i) = G(v(rng));
      u(i, j) = G(v(rng));
    }
  return l * u;
}

inline M shift3() { return M{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}; }

inline GeneratorConfig config(Family f, std::uint64_t seed, std::size_t dim,
                              std::optional<Theorem> target = std::nullopt) {
  GeneratorConfig cfg;
  cfg.family = f;
  cfg.seed = seed;
  cfg.dim = dim;
  cfg.target = target;
  return cfg;
}

}  // namespace testing_support
