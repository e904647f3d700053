#pragma once

#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "gdrazin/theorem.hpp"

namespace gdrazin {

/// Solution of L = lambda * R.
template <Scalar S>
struct LambdaSolution {
  std::optional<std::type_identity_t<S>> lambda;  // absent when no nonzero lambda works
  bool vacuous = false;     // L = R = 0: every lambda works, 1 is reported
};

/// Reads lambda off the first nonzero entry of R (the largest entry on the
/// approx backend), then verifies L = lambda R everywhere. lambda = 0 is rejected.
template <Scalar S>
LambdaSolution<S> check_lambda_equation(const Matrix<S>& lhs, const Matrix<S>& rhs, const Tolerance& tol = {});

struct ConditionResult {
  std::string name;
  double residual = 0.0;  // exact backend: 0 or 1
  bool holds = false;
};

template <Scalar S>
struct HypothesisReport {
  Theorem theorem{};
  bool holds = false;
  std::optional<std::type_identity_t<S>> lambda;
  bool vacuous = false;        // every lambda-bearing condition had L = R = 0
  bool lambda_forced = false;  // lambda was supplied rather than detected
  /// Only filled when lambda was detected: whether the conditions also hold
  /// with lambda = 1 (the unweighted form of the theorem).
  std::optional<bool> holds_at_unit_lambda;
  std::vector<ConditionResult> conditions;

  /// First failing condition, or empty.
  std::string first_failure() const {
    for (const auto& c : conditions)
      if (!c.holds) return c.name;
    return {};
  }
};

/// Evaluates every side condition of `theorem` on `data`. A single lambda must
/// serve all lambda-bearing conditions: it is taken from the first non-vacuous
/// one (or from `forced_lambda`) and verified in the rest. Throws
/// DimensionError when the data does not have the theorem's layout.
template <Scalar S>
HypothesisReport<S> check_hypotheses(Theorem theorem, const TheoremData<S>& data,
                                     std::optional<std::type_identity_t<S>> forced_lambda = std::nullopt, const Tolerance& tol = {});

}  // namespace gdrazin
