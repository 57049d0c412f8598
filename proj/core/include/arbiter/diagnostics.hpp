#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arbiter {

enum class Severity { Info, Warning, Error };

/// Machine-readable failure and diagnostic codes shared by the library, the
/// CLI and the HTTP service.
enum class Code {
  ParseError,
  DuplicateLabel,
  DanglingPreferTarget,
  RangeRestrictionViolation,
  StratificationError,
  PreferDependsOnDerived,
  UnsupportedInputArity,
  MissingComplement,
  UngovernedConflict,
  UnusedAbducible,
  UnreachableRule,
  UnknownReference,
  LevelMismatch,
  MissingAdvancedCondition,
  UnboundVariable,
  ArithmeticError,
  UnknownOption,
  UnknownScenarioElement,
  InvalidContext,
  InconsistentInputs,
  TooLarge,
  UnknownApplication,
  InvalidRequest,
  IoError,
};

std::string_view to_string(Severity s);
std::string_view to_string(Code c);

struct Diagnostic {
  Severity severity = Severity::Error;
  Code code = Code::ParseError;
  std::string message;
  // 1-based source position; 0 when not tied to a location.
  int line = 0;
  int column = 0;
  // Rule label or other subject the diagnostic is about, if any.
  std::string subject;
  // Token kinds the parser would have accepted (parse errors only).
  std::vector<std::string> expected;

  bool operator==(const Diagnostic&) const = default;
};

/// "line:col: error[Code]: message"
std::string format(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diags);

class Error : public std::runtime_error {
 public:
  explicit Error(Diagnostic d);
  Error(Code code, std::string message);

  Code code() const noexcept { return diagnostic_.code; }
  const Diagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// Rejection carrying every diagnostic of a failed check, errors first.
class DiagnosticsError : public Error {
 public:
  explicit DiagnosticsError(std::vector<Diagnostic> all);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return all_; }

 private:
  std::vector<Diagnostic> all_;
};

}  // namespace arbiter
