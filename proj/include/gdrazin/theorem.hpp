#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "gdrazin/matrix.hpp"
#include "gdrazin/pierce.hpp"

namespace gdrazin {

/// Every representation result the library evaluates.
///   L23  (a+b)^d for quasinilpotent a          T24  additive formula
///   T31/C32, T33/C34  Pierce-decomposition formulas and their mirrors
///   T41/C42, T43/C44  2x2 block-matrix formulas and their mirrors
enum class Theorem { L23, T24, T31, C32, T33, C34, T41, C42, T43, C44 };

inline constexpr std::array<Theorem, 10> kAllTheorems{Theorem::L23, Theorem::T24, Theorem::T31, Theorem::C32,
                                                      Theorem::T33, Theorem::C34, Theorem::T41, Theorem::C42,
                                                      Theorem::T43, Theorem::C44};

std::string to_string(Theorem t);
Theorem theorem_from_string(std::string_view s);

enum class Layout { additive, pierce, block };
Layout layout_of(Theorem t);

/// True for the corollaries, which are evaluated by flip delegation or directly.
bool is_corollary(Theorem t);

template <Scalar S>
struct AdditiveInput {
  Matrix<S> a, b;
};

template <Scalar S>
struct PierceInput {
  Matrix<S> x;
  Idempotent<S> p;
};

template <Scalar S>
struct BlockInput {
  Matrix<S> A, B, C, D;
};

template <Scalar S>
using TheoremData = std::variant<AdditiveInput<S>, PierceInput<S>, BlockInput<S>>;

/// The matrix whose Drazin inverse a theorem represents: a+b, x, or M.
template <Scalar S>
Matrix<S> target_matrix(const TheoremData<S>& data) {
  return std::visit(
      [](const auto& in) -> Matrix<S> {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, AdditiveInput<S>>) {
          return in.a + in.b;
        } else if constexpr (std::is_same_v<T, PierceInput<S>>) {
          return in.x;
        } else {
          return assemble(in.A, in.B, in.C, in.D);
        }
      },
      data);
}

/// How a series evaluation stopped. `terms` counts the nonzero terms summed
/// before the first zero term; `capped` is set when the cap stopped it.
struct SeriesStat {
  std::size_t terms = 0;
  std::size_t evaluations = 0;
  bool capped = false;
};

/// Per-series statistics keyed by series name, keeping the longest run.
using SeriesLog = std::map<std::string, SeriesStat>;

struct FormulaOptions {
  Tolerance tol{};
  std::size_t series_cap = 0;  // 0 means 4 * (size of the target matrix)
  /// Skips hypothesis checking. Benchmarking only: results on data that
  /// violates the hypotheses are meaningless.
  bool unchecked = false;
};

template <Scalar S>
struct FormulaResult {
  Matrix<S> value;
  SeriesLog series;
};

/// Corollaries can be evaluated by delegating to their theorem on the flipped
/// data, or by evaluating the printed corollary formula directly.
enum class Route { delegated, direct };

}  // namespace gdrazin
