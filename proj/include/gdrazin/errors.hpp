#pragma once

#include <stdexcept>
#include <string>

namespace gdrazin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when matrices of different scalar backends meet in one operation.
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

class ValueError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// The numerical rank of some intermediate matrix could not be decided
/// with confidence under the configured threshold.
class RankAmbiguity : public Error {
 public:
  using Error::Error;
};

class NotIdempotent : public Error {
 public:
  using Error::Error;
};

/// A theorem's side conditions do not hold for the supplied data.
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(const std::string& theorem, const std::string& condition)
      : Error(theorem + ": condition failed: " + condition), condition_(condition) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// A series ran into its hard term cap without reaching a zero term.
class SeriesCapExceeded : public Error {
 public:
  using Error::Error;
};

class GeneratorBudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace gdrazin
