#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdrazin/formulas.hpp"
#include "gdrazin/generators.hpp"
#include "gdrazin/io.hpp"

namespace gdrazin {

struct VerifyOptions {
  std::vector<Family> families{Family::G1, Family::G2, Family::G3, Family::G4};
  /// Targets cycled through by G5 instances.
  std::vector<Theorem> g5_targets{Theorem::T31, Theorem::C32, Theorem::T33, Theorem::C34,
                                  Theorem::T41, Theorem::C42, Theorem::T43, Theorem::C44};
  std::size_t count = 100;  // per family; G3 has two fixtures
  std::uint64_t seed = 0;
  std::size_t dim_min = 2, dim_max = 6;
  Backend backend = Backend::exact;
  FormulaOptions formula{};
  std::size_t budget = 10000;
  unsigned jobs = 1;
};

struct VerifyRecord {
  std::string id;
  Family family{};
  std::optional<Theorem> theorem;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::size_t attempts = 0;
  json hypothesis;  // hypothesis report document
  std::string formula_digest, oracle_digest;
  bool agree = false;
  double max_residual = 0.0;
  SeriesLog series;
  /// Corollaries only: direct and delegated routes equal, and delegated route equal to the oracle.
  std::optional<bool> routes_agree, delegated_agree;
  std::string error_kind;  // empty, "budget", "hypothesis", "series_cap", "rank", "other"
  std::string error;

  bool evaluated() const { return error_kind.empty(); }
};

struct VerifySummary {
  std::size_t total = 0, agree = 0, disagree = 0, errors = 0, budget_exhausted = 0;
  std::size_t route_mismatches = 0, delegated_disagree = 0;
  std::size_t max_series_terms = 0;
  bool series_within_size = true;  // every series stopped at <= matrix-size terms
  bool series_capped = false;
};

struct VerifyReport {
  std::vector<VerifyRecord> records;
  VerifySummary summary;
  /// No disagreement and no error other than an exhausted generator budget.
  bool ok() const { return summary.disagree == 0 && summary.errors == summary.budget_exhausted; }
};

/// Generates, checks, applies and compares every instance. Records come back
/// in generation order whatever the number of jobs.
VerifyReport run_verification(const VerifyOptions& opts);

/// Evaluates one instance on the given backend.
VerifyRecord verify_instance(const Instance& inst, Backend backend, const FormulaOptions& opts);

json verification_to_json(const VerifyReport& report, const VerifyOptions& opts, const json& flags = json::object());

}  // namespace gdrazin
