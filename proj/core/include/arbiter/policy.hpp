#pragma once

#include "arbiter/ast.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arbiter {

/// A named application scenario. `basic_text` is the authored sentence; the
/// optional advanced condition refines it into first-order conditions.
struct ScenarioDef {
  std::string id;
  std::string basic_text;
  std::optional<std::vector<Literal>> advanced_condition;
  // Marked `mode: propositional`: stays a plain atom in advanced mode.
  bool propositional_only = false;
  int line = 0;

  std::string atom() const;
};

/// Scenario |> Option.
struct DecisionStatement {
  std::string id;
  std::string scenario;
  std::string option;
  int line = 0;
};

/// `stronger` over `weaker`, optionally only within a context scenario.
struct PreferenceStatement {
  std::string id;
  std::string stronger;
  std::string weaker;
  std::optional<std::string> context;
  int line = 0;
};

struct PolicyDocument {
  std::string name;
  std::vector<std::string> options;
  std::vector<ScenarioDef> scenarios;
  std::vector<DecisionStatement> statements;
  std::vector<PreferenceStatement> preferences;

  const ScenarioDef* scenario(std::string_view id) const;
  /// 0 for decision statements, 1 + level of the targets for preferences;
  /// nullopt for unknown ids.
  std::optional<int> level(std::string_view id) const;
};

enum class CompileMode { Basic, Advanced };

std::string_view to_string(CompileMode mode);
std::optional<CompileMode> parse_compile_mode(std::string_view text);

/// Sentence to propositional atom: lowercase, every run of non-alphanumeric
/// characters becomes one underscore, no leading or trailing underscore.
std::string propositionalize(std::string_view sentence);

/// Parses the sectioned `.sbp` format:
///
///   POLICY salary_negotiation
///   OPTIONS
///     accept
///     refuse
///   SCENARIOS
///     low: The offered salary is low
///       advanced: offered_salary(O), expected_salary(E), O=<0.7*E
///   STATEMENTS
///     refuse_low: low => refuse
///   PREFERENCES
///     close_refuse: refuse_close > accept_close
///     plan_accept: accept_close > refuse_close when plan
///
/// `#` starts a comment. Throws arbiter::Error (ParseError, UnknownReference,
/// LevelMismatch).
PolicyDocument parse_policy(std::string_view source);

/// Compiles a policy into a rule theory. Labels are assigned in declaration
/// order per level: r1.. for decisions, p1.. for preferences, c1.. for
/// meta-preferences, cK_1.. above that. Throws MissingAdvancedCondition.
Theory compile_policy(const PolicyDocument& doc, CompileMode mode);

struct ScenarioElement {
  enum class Kind { Propositional, Numeric };
  std::string id;
  Kind kind = Kind::Propositional;
  bool operator==(const ScenarioElement&) const = default;
};

std::string_view to_string(ScenarioElement::Kind kind);

/// What a client needs to build a query: the options and the input vocabulary.
struct ApplicationMetadata {
  std::vector<std::string> options;
  std::vector<ScenarioElement> scenario_elements;
  std::vector<std::string> abducibles;

  const ScenarioElement* element(std::string_view id) const;
  bool has_option(std::string_view id) const;
  bool operator==(const ApplicationMetadata&) const = default;
};

ApplicationMetadata metadata_of(const Theory& theory);

}  // namespace arbiter
