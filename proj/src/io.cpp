#include "gdrazin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace gdrazin {

#ifndef GDRAZIN_VERSION
#define GDRAZIN_VERSION "0.0.0"
#endif

const char* version() noexcept { return GDRAZIN_VERSION; }

template <Scalar S>
json scalar_to_json(const S& s) {
  if constexpr (is_exact_v<S>) {
    return s.to_canonical();
  } else {
    return json::array({s.real(), s.imag()});
  }
}

template <Scalar S>
json matrix_to_json(const Matrix<S>& m) {
  json entries = json::array();
  for (const auto& v : m.entries()) entries.push_back(scalar_to_json(v));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"backend", to_string(ScalarTraits<S>::backend)},
          {"entries", std::move(entries)}};
}

namespace {

std::size_t dimension(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned())
    throw ParseError(std::string("matrix document needs a non-negative integer '") + key + "'");
  return doc[key].get<std::size_t>();
}

}  // namespace

AnyMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be an object");
  const std::size_t rows = dimension(doc, "rows"), cols = dimension(doc, "cols");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError("matrix document needs 'entries'");
  const json& entries = doc["entries"];
  if (entries.size() != rows * cols)
    throw ParseError("expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(entries.size()));
  const std::string backend = doc.value("backend", std::string("exact"));
  try {
    if (backend_from_string(backend) == Backend::exact) {
      std::vector<GaussRational> v;
      v.reserve(entries.size());
      for (const auto& e : entries) {
        if (e.is_string()) {
          v.push_back(GaussRational::parse(e.get<std::string>()));
        } else if (e.is_number_integer()) {
          v.emplace_back(e.get<long>());
        } else {
          throw ParseError("exact entries must be strings like \"1/2-3/4i\"");
        }
      }
      return ExactMatrix(rows, cols, std::move(v));
    }
    std::vector<ApproxScalar> v;
    v.reserve(entries.size());
    for (const auto& e : entries) {
      if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else if (e.is_number()) {
        v.emplace_back(e.get<double>(), 0.0);
      } else {
        throw ParseError("approx entries must be [re, im] pairs");
      }
    }
    return ApproxMatrix(rows, cols, std::move(v));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

AnyMatrix read_matrix_file(const std::filesystem::path& path) { return matrix_from_json(read_json_file(path)); }

template <Scalar S>
std::string digest(const Matrix<S>& m) {
  const std::string text = matrix_to_json(m).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Bundle bundle_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ParseError("bundle must be an object");
  Bundle b;
  if (!doc.contains("theorem") || !doc["theorem"].is_string()) throw ParseError("bundle needs a 'theorem' tag");
  b.theorem = theorem_from_string(doc["theorem"].get<std::string>());
  b.id = doc.value("id", std::string());
  if (doc.contains("lambda") && !doc["lambda"].is_null()) {
    if (!doc["lambda"].is_string()) throw ParseError("bundle lambda must be an exact scalar string");
    b.lambda = GaussRational::parse(doc["lambda"].get<std::string>());
  }
  if (doc.contains("family") && doc["family"].is_string()) b.family = doc["family"].get<std::string>();
  if (doc.contains("seed") && doc["seed"].is_number_unsigned()) b.seed = doc["seed"].get<std::uint64_t>();
  if (!doc.contains("matrices") || !doc["matrices"].is_object()) throw ParseError("bundle needs 'matrices'");
  for (const auto& [name, entry] : doc["matrices"].items()) {
    if (entry.is_string()) {
      b.matrices.emplace(name, read_matrix_file(base_dir / entry.get<std::string>()));
    } else {
      b.matrices.emplace(name, matrix_from_json(entry));
    }
  }
  return b;
}

Bundle read_bundle(const std::filesystem::path& path) {
  std::filesystem::path file = path;
  if (std::filesystem::is_directory(path)) file = path / "bundle.json";
  return bundle_from_json(read_json_file(file), file.parent_path());
}

json bundle_to_json(const Instance& inst) {
  json mats = json::object();
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, AdditiveInput<ExactScalar>>) {
          mats["a"] = matrix_to_json(in.a);
          mats["b"] = matrix_to_json(in.b);
        } else if constexpr (std::is_same_v<T, PierceInput<ExactScalar>>) {
          mats["x"] = matrix_to_json(in.x);
          mats["p"] = matrix_to_json(in.p.matrix());
        } else {
          mats["A"] = matrix_to_json(in.A);
          mats["B"] = matrix_to_json(in.B);
          mats["C"] = matrix_to_json(in.C);
          mats["D"] = matrix_to_json(in.D);
        }
      },
      inst.data);
  json doc = {{"id", inst.id},
              {"theorem", to_string(inst.theorem)},
              {"family", to_string(inst.family)},
              {"seed", inst.seed},
              {"matrices", std::move(mats)}};
  doc["lambda"] = inst.lambda ? json(inst.lambda->to_compact()) : json(nullptr);
  return doc;
}

template <Scalar S>
TheoremData<S> bundle_data(const Bundle& b, const Tolerance& tol) {
  auto get = [&](const char* name) -> Matrix<S> {
    auto it = b.matrices.find(name);
    if (it == b.matrices.end())
      throw ParseError("bundle for " + to_string(b.theorem) + " is missing matrix '" + name + "'");
    return it->second.template as<S>();
  };
  switch (layout_of(b.theorem)) {
    case Layout::additive:
      return AdditiveInput<S>{get("a"), get("b")};
    case Layout::pierce:
      return PierceInput<S>{get("x"), Idempotent<S>(get("p"), tol)};
    case Layout::block:
      return BlockInput<S>{get("A"), get("B"), get("C"), get("D")};
  }
  throw ParseError("unknown layout");
}

namespace {

template <Scalar S>
json compact_scalar(const S& s) {
  if constexpr (is_exact_v<S>) {
    return s.to_compact();
  } else {
    return json::array({s.real(), s.imag()});
  }
}

json residual_json(double r) { return std::isfinite(r) ? json(r) : json(nullptr); }

}  // namespace

template <Scalar S>
json hypothesis_to_json(const HypothesisReport<S>& rep) {
  json residuals = json::object();
  json conditions = json::array();
  for (const auto& c : rep.conditions) {
    residuals[c.name] = residual_json(c.residual);
    conditions.push_back({{"name", c.name}, {"residual", residual_json(c.residual)}, {"holds", c.holds}});
  }
  json doc = {{"theorem", to_string(rep.theorem)},
              {"holds", rep.holds},
              {"vacuous", rep.vacuous},
              {"lambda_forced", rep.lambda_forced},
              {"residuals", std::move(residuals)},
              {"conditions", std::move(conditions)}};
  doc["lambda"] = rep.lambda ? compact_scalar(*rep.lambda) : json(nullptr);
  doc["holds_at_unit_lambda"] = rep.holds_at_unit_lambda ? json(*rep.holds_at_unit_lambda) : json(nullptr);
  const std::string failed = rep.first_failure();
  doc["first_failure"] = failed.empty() ? json(nullptr) : json(failed);
  return doc;
}

template <Scalar S>
json drazin_to_json(const DrazinData<S>& d) {
  return {{"index", d.index}, {"dinv", matrix_to_json(d.dinv)}, {"pi", matrix_to_json(d.pi)}};
}

json series_to_json(const SeriesLog& log) {
  json out = json::object();
  for (const auto& [name, s] : log)
    out[name] = {{"terms", s.terms}, {"evaluations", s.evaluations}, {"capped", s.capped}};
  return out;
}

#define GDRAZIN_INSTANTIATE(S)                                            \
  template json scalar_to_json(const S&);                                 \
  template json matrix_to_json(const Matrix<S>&);                         \
  template std::string digest(const Matrix<S>&);                          \
  template TheoremData<S> bundle_data(const Bundle&, const Tolerance&);   \
  template json hypothesis_to_json(const HypothesisReport<S>&);           \
  template json drazin_to_json(const DrazinData<S>&);

GDRAZIN_INSTANTIATE(ExactScalar)
GDRAZIN_INSTANTIATE(ApproxScalar)

#undef GDRAZIN_INSTANTIATE

}  // namespace gdrazin
