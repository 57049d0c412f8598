#pragma once

#include "arbiter/ast.hpp"
#include "arbiter/decimal.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace arbiter {

/// Input facts for one decision.
struct QueryContext {
  std::set<std::string> facts;                         // propositional atoms
  std::map<std::string, std::vector<Decimal>> bindings;  // numeric inputs, e.g. offered_salary -> {70000}
  std::vector<DomainAtom> assumed;                     // ground abducibles taken as true

  void bind(const std::string& name, Decimal value) { bindings[name].push_back(std::move(value)); }
  void assume(DomainAtom atom);
  bool operator==(const QueryContext&) const = default;
};

/// One instance of a rule schema under a concrete variable binding.
struct GroundRule {
  std::string schema_label;
  std::string instance_id;  // schema label plus "{Var=value,...}" when the schema has variables
  int level = 0;
  Literal head;                         // ground DomainAtom or Preference
  std::vector<DomainAtom> premises;     // ground bracketed premises
  std::vector<Literal> conditions;      // conditions with variables substituted
  std::vector<DomainAtom> facts_used;   // context facts matched by conditions or premises
  std::vector<DomainAtom> assumptions;  // assumed abducibles matched by conditions or premises
  std::vector<DomainAtom> dependencies; // derived literals other rules must support
  std::vector<DomainAtom> open_assumptions;  // abducible premises absent from the context
  bool satisfied = true;                // false iff open_assumptions is non-empty

  bool is_preference() const { return std::holds_alternative<Preference>(head); }
  const DomainAtom& domain_head() const { return std::get<DomainAtom>(head); }
  const Preference& preference() const { return std::get<Preference>(head); }
  bool operator==(const GroundRule&) const = default;
};

struct GroundProgram {
  std::vector<GroundRule> rules;  // theory order, then binding order
  int max_level = 0;

  const GroundRule* find(std::string_view instance_id) const;
};

/// Instantiates every rule of `theory` against `ctx`. Derived literals are
/// computed to a fixpoint first so rule bodies can chain through beliefs.
/// Throws ArithmeticError (division by zero, non-numeric operand) and
/// UnboundVariable.
GroundProgram ground_theory(const Theory& theory, const QueryContext& ctx);

/// Key used to compare ground atoms: their canonical rendering.
std::string atom_key(const DomainAtom& atom);

using Binding = std::map<std::string, Term>;

/// Evaluates an arithmetic term under `binding`. Throws ArithmeticError.
Numeric evaluate(const Term& term, const Binding& binding);

/// Exact comparison when both sides are exact; otherwise both sides are rounded
/// to 12 significant digits and compared as doubles.
bool eval_builtin(CmpOp cmp, const Numeric& lhs, const Numeric& rhs);
bool eval_builtin(CmpOp cmp, const Decimal& lhs, const Decimal& rhs);

Term substitute(const Term& term, const Binding& binding);
DomainAtom substitute(const DomainAtom& atom, const Binding& binding);

/// One-way matching of `pattern` against the ground `value`, extending
/// `binding`. Returns false (binding possibly partially extended) on mismatch.
bool match(const Term& pattern, const Term& value, Binding& binding);
bool match(const DomainAtom& pattern, const DomainAtom& value, Binding& binding);

}  // namespace arbiter
