#include "arbiter/diagnostics.hpp"

#include <algorithm>

namespace arbiter {

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

std::string_view to_string(Code c) {
  switch (c) {
    case Code::ParseError: return "ParseError";
    case Code::DuplicateLabel: return "DuplicateLabel";
    case Code::DanglingPreferTarget: return "DanglingPreferTarget";
    case Code::RangeRestrictionViolation: return "RangeRestrictionViolation";
    case Code::StratificationError: return "StratificationError";
    case Code::PreferDependsOnDerived: return "PreferDependsOnDerived";
    case Code::UnsupportedInputArity: return "UnsupportedInputArity";
    case Code::MissingComplement: return "MissingComplement";
    case Code::UngovernedConflict: return "UngovernedConflict";
    case Code::UnusedAbducible: return "UnusedAbducible";
    case Code::UnreachableRule: return "UnreachableRule";
    case Code::UnknownReference: return "UnknownReference";
    case Code::LevelMismatch: return "LevelMismatch";
    case Code::MissingAdvancedCondition: return "MissingAdvancedCondition";
    case Code::UnboundVariable: return "UnboundVariable";
    case Code::ArithmeticError: return "ArithmeticError";
    case Code::UnknownOption: return "UnknownOption";
    case Code::UnknownScenarioElement: return "UnknownScenarioElement";
    case Code::InvalidContext: return "InvalidContext";
    case Code::InconsistentInputs: return "InconsistentInputs";
    case Code::TooLarge: return "TooLarge";
    case Code::UnknownApplication: return "UnknownApplication";
    case Code::InvalidRequest: return "InvalidRequest";
    case Code::IoError: return "IoError";
  }
  return "ParseError";
}

std::string format(const Diagnostic& d) {
  std::string out;
  if (d.line > 0) {
    out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
  }
  out += to_string(d.severity);
  out += "[";
  out += to_string(d.code);
  out += "]: ";
  out += d.message;
  if (!d.expected.empty()) {
    out += " (expected one of:";
    for (const auto& e : d.expected) out += " " + e;
    out += ")";
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

Error::Error(Diagnostic d) : std::runtime_error(format(d)), diagnostic_(std::move(d)) {}

Error::Error(Code code, std::string message)
    : Error(Diagnostic{Severity::Error, code, std::move(message), 0, 0, {}, {}}) {}

DiagnosticsError::DiagnosticsError(std::vector<Diagnostic> all)
    : Error(all.empty() ? Diagnostic{} : all.front()), all_(std::move(all)) {}

}  // namespace arbiter
