#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gdrazin/conditions.hpp"

namespace gdrazin {

/// Instance families.
///   G1  pairs of q-commuting weighted shifts (target L23)
///   G2  b = diag(invertible, nilpotent shift), a strictly block-upper (target L23)
///   G3  the two embedded worked examples (targets T31 and T43)
///   G4  a = diag(invertible, nilpotent), b block-lower, from a G2 pair (target T24)
///   G5  rejection sampling of sparse structured blocks (targets T31..C44)
enum class Family { G1, G2, G3, G4, G5 };

std::string to_string(Family f);
/// Accepts "G1".."G5" and the long tags such as "G5_block44_rejection".
Family family_from_string(std::string_view s);

/// {0, +-1, +-2, +-i, +-2i}.
std::vector<GaussRational> default_entry_pool();

struct GeneratorConfig {
  Family family = Family::G1;
  std::uint64_t seed = 0;
  std::size_t dim = 4;
  std::vector<GaussRational> entry_pool = default_entry_pool();
  /// G1/G2/G4: the q-commutation scalar; drawn from the nonzero pool entries when absent.
  std::optional<GaussRational> lambda;
  /// G3 picks the fixture (T31 or T43, default T43). G5 needs a Pierce or block theorem.
  std::optional<Theorem> target;
  std::size_t budget = 10000;  // G5 attempts
  /// Conjugate Pierce instances by a random unimodular matrix so that p is not diagonal.
  bool conjugate = true;
};

struct Instance {
  std::string id;
  Family family{};
  Theorem theorem{};
  TheoremData<ExactScalar> data;
  std::optional<GaussRational> lambda;  // as detected on the generated data
  std::uint64_t seed = 0;
  std::size_t attempts = 1;
};

/// Throws GeneratorBudgetExhausted when G5 runs out of attempts and ValueError
/// on a bad configuration. The result always passes check_hypotheses for its
/// theorem on the exact backend.
Instance generate(const GeneratorConfig& cfg);

/// The Pierce fixture: A = D = 3x3 upper shift, p = diag(I3, 0), lambda = 2.
Instance fixture_shift_pierce();
/// The block fixture with lambda = 2i.
Instance fixture_block_2i();

/// The corollary instance obtained from a theorem instance by flipping:
/// (x, 1-p) for Pierce data, (D, C, B, A) for block data.
Instance flip_instance(const Instance& in);

/// Lower weighted shift: entries (i+1, i) = w_i.
template <Scalar S>
Matrix<S> weighted_shift(const std::vector<S>& weights);

/// Entrywise conversion of generated data to another backend.
template <Scalar S>
TheoremData<S> convert_data(const TheoremData<ExactScalar>& data);

}  // namespace gdrazin
