#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "gdrazin/conditions.hpp"
#include "gdrazin/drazin.hpp"
#include "gdrazin/generators.hpp"

namespace gdrazin {

using json = nlohmann::json;

const char* version() noexcept;

/// Exact scalars as canonical "p/q+r/si" strings, approx scalars as [re, im].
template <Scalar S>
json scalar_to_json(const S& s);

/// Matrix interchange document: {rows, cols, backend, entries}.
template <Scalar S>
json matrix_to_json(const Matrix<S>& m);

/// A matrix read from a document whose backend is only known at run time.
class AnyMatrix {
 public:
  AnyMatrix(ExactMatrix m) : m_(std::move(m)) {}
  AnyMatrix(ApproxMatrix m) : m_(std::move(m)) {}

  Backend backend() const noexcept { return m_.index() == 0 ? Backend::exact : Backend::approx; }
  /// Exact data widens to approx; approx data requested as exact throws BackendMismatch.
  template <Scalar S>
  Matrix<S> as() const {
    if (const auto* e = std::get_if<ExactMatrix>(&m_)) return from_exact<S>(*e);
    if constexpr (is_exact_v<S>) {
      throw BackendMismatch("approx matrix cannot be used on the exact backend");
    } else {
      return std::get<ApproxMatrix>(m_);
    }
  }

 private:
  std::variant<ExactMatrix, ApproxMatrix> m_;
};

/// Throws ParseError on malformed documents.
AnyMatrix matrix_from_json(const json& doc);
AnyMatrix read_matrix_file(const std::filesystem::path& path);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

/// FNV-1a 64-bit over the compact serialization of the matrix document, as hex.
template <Scalar S>
std::string digest(const Matrix<S>& m);

/// Instance bundle: {theorem, lambda?, matrices: {name: document or relative path}, id?, family?, seed?}.
/// Names: a, b (additive), x, p (Pierce), A, B, C, D (block).
struct Bundle {
  std::string id;
  Theorem theorem{};
  std::optional<GaussRational> lambda;
  std::map<std::string, AnyMatrix> matrices;
  std::optional<std::string> family;
  std::optional<std::uint64_t> seed;
};

/// Accepts a bundle document or a directory holding bundle.json.
Bundle read_bundle(const std::filesystem::path& path);
Bundle bundle_from_json(const json& doc, const std::filesystem::path& base_dir = {});
json bundle_to_json(const Instance& inst);

/// Throws ParseError when a matrix the theorem needs is missing.
template <Scalar S>
TheoremData<S> bundle_data(const Bundle& b, const Tolerance& tol = {});

template <Scalar S>
json hypothesis_to_json(const HypothesisReport<S>& rep);

template <Scalar S>
json drazin_to_json(const DrazinData<S>& d);

json series_to_json(const SeriesLog& log);

}  // namespace gdrazin
