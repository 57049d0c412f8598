#pragma once

#include "arbiter/ast.hpp"
#include "arbiter/diagnostics.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace arbiter {

/// Parses the `.grg` rule language:
///
///   rule(Label, Head, [Premise, ...]) [:- Condition, ...].
///   complement(A, B).
///   abducible(P).
///
/// `%` starts a comment that runs to the end of the line. Besides syntax, the
/// parser rejects duplicate labels, preferences naming unknown rules, variables
/// that are not bound by a condition atom, and preferences across levels.
/// Throws arbiter::Error.
Theory parse_theory(std::string_view source);

/// The structural checks parse_theory applies, for theories built in code.
/// Throws arbiter::Error.
void check_theory(const Theory& theory);

/// Canonical text: one clause per line, rules first, then both orientations of
/// each complement pair, then abducible declarations.
std::string render_theory(const Theory& theory);

std::string render(const Term& term);
std::string render(const DomainAtom& atom);
std::string render(const Literal& literal);
std::string render(const RuleClause& rule);

/// Parses a comma-separated condition list, e.g. "offered_salary(O), O>10".
std::vector<Literal> parse_conditions(std::string_view text);

/// Parses one domain atom such as `offered_salary(100)`.
DomainAtom parse_atom(std::string_view text);

/// Priority level: 0 for rules with a domain head, 1 + level of the targets for
/// preference rules. Throws StratificationError if targets disagree in level
/// or the preference graph is cyclic.
int level_of(const Theory& theory, std::string_view label);

/// level_of for every rule at once.
std::map<std::string, int> rule_levels(const Theory& theory);

/// Predicates that appear as the head of some level-0 rule.
std::set<std::string> derived_predicates(const Theory& theory);

/// Options of the theory: terminal conclusions (never used in a rule body)
/// that are complement members or heads of level-0 rules, in order of first
/// appearance (complements first).
std::vector<std::string> theory_options(const Theory& theory);

/// Predicates used in some premise or condition.
std::set<std::string> body_predicates(const Theory& theory);

void collect_variables(const Term& term, std::set<std::string>& out);
void collect_variables(const Literal& literal, std::set<std::string>& out);

/// Static checks over a parsed theory. Errors make the theory unusable by the
/// engine; warnings and infos are advisory.
std::vector<Diagnostic> validate_theory(const Theory& theory);

}  // namespace arbiter
