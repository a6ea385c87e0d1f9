#pragma once

#include <stdexcept>
#include <string>

namespace satstream {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyClause : Error {
  EmptyClause() : Error("empty clause") {}
};

// Conjunctive clause containing a variable with both signs; the clause is
// an unsatisfiable constant and cannot be represented as a normal clause.
struct ContradictoryConjunction : Error {
  explicit ContradictoryConjunction(int var)
      : Error("conjunctive clause contains x" + std::to_string(var) +
              " with both signs") {}
};

struct ParseError : Error {
  long line = 0;
  ParseError(const std::string& what, long line_no)
      : Error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

struct VarOutOfRange : Error {
  VarOutOfRange(int var, int n, long line_no)
      : Error("line " + std::to_string(line_no) + ": variable " +
              std::to_string(var) + " outside [1, " + std::to_string(n) +
              "]") {}
};

struct ClauseTooLarge : Error {
  ClauseTooLarge(std::size_t size, std::size_t beta)
      : Error("clause of size " + std::to_string(size) +
              " exceeds encodable bound " + std::to_string(beta)) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct TooManyVariables : Error {
  TooManyVariables(int n, int guard)
      : Error("exhaustive search over " + std::to_string(n) +
              " variables exceeds guard n <= " + std::to_string(guard)) {}
};

struct DuplicateInsert : Error {
  explicit DuplicateInsert(long line_no)
      : Error("line " + std::to_string(line_no) +
              ": duplicate insert of a live clause in strict mode") {}
};

struct SpaceBudgetExceeded : Error {
  SpaceBudgetExceeded(std::size_t words, std::size_t budget)
      : Error("stored " + std::to_string(words) + " words, budget " +
              std::to_string(budget)) {}
};

struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& what) : Error(what) {}
};

struct SeedMismatch : Error {
  SeedMismatch() : Error("merging sketches with different seed or size") {}
};

struct FrequencyBoundViolated : Error {
  FrequencyBoundViolated(int var, long f)
      : Error("variable x" + std::to_string(var) + " occurs in more than " +
              std::to_string(f) + " clauses") {}
};

struct AllInstancesTerminated : Error {
  AllInstancesTerminated()
      : Error("every guess instance exceeded its space budget") {}
};

struct KTooLarge : Error {
  explicit KTooLarge(int k)
      : Error("k = " + std::to_string(k) + " exceeds generator guard") {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct InstanceTooLarge : Error {
  explicit InstanceTooLarge(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

struct OracleGuardViolated : Error {
  explicit OracleGuardViolated(const std::string& what) : Error(what) {}
};

}  // namespace satstream
