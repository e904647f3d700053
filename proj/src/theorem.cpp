#include "gdrazin/theorem.hpp"

#include "gdrazin/errors.hpp"

namespace gdrazin {

namespace {
constexpr std::array<std::string_view, 10> kNames{"L23", "T24", "T31", "C32", "T33",
                                                  "C34", "T41", "C42", "T43", "C44"};
}

std::string to_string(Theorem t) { return std::string(kNames[static_cast<std::size_t>(t)]); }

Theorem theorem_from_string(std::string_view s) {
  for (std::size_t k = 0; k < kNames.size(); ++k)
    if (kNames[k] == s) return kAllTheorems[k];
  throw ParseError("unknown theorem '" + std::string(s) + "'");
}

Layout layout_of(Theorem t) {
  switch (t) {
    case Theorem::L23:
    case Theorem::T24:
      return Layout::additive;
    case Theorem::T31:
    case Theorem::C32:
    case Theorem::T33:
    case Theorem::C34:
      return Layout::pierce;
    default:
      return Layout::block;
  }
}

bool is_corollary(Theorem t) {
  return t == Theorem::C32 || t == Theorem::C34 || t == Theorem::C42 || t == Theorem::C44;
}

}  // namespace gdrazin
