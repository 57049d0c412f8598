#pragma once

#include "arbiter/decimal.hpp"

#include <string>
#include <variant>
#include <vector>

namespace arbiter {

enum class ArithOp { Add, Sub, Mul, Div, Pow };
enum class CmpOp { Gt, Lt, Ge, Le, Eq };

std::string_view to_string(ArithOp op);
std::string_view to_string(CmpOp op);

/// A term of the rule language. Arithmetic expressions only ever contain
/// numbers, variables and nested arithmetic.
struct Term {
  enum class Kind { Atom, Number, Variable, Compound, Arith };

  Kind kind = Kind::Atom;
  std::string name;  // atom text, variable name or compound functor
  Decimal number;
  ArithOp op = ArithOp::Add;
  std::vector<Term> args;  // compound arguments, or the two arithmetic operands

  static Term atom(std::string name);
  static Term num(Decimal value);
  static Term var(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term arith(ArithOp op, Term lhs, Term rhs);

  bool is_ground() const;
  bool operator==(const Term&) const = default;
};

/// `predicate(args...)`; a propositional atom has no arguments.
struct DomainAtom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;
  bool operator==(const DomainAtom&) const = default;
};

/// Arithmetic comparison such as `O =< 0.7*E`.
struct Comparison {
  CmpOp op = CmpOp::Eq;
  Term lhs;
  Term rhs;
  bool operator==(const Comparison&) const = default;
};

/// `prefer(stronger, weaker)`: rule `stronger` has priority over `weaker`.
struct Preference {
  std::string stronger;
  std::string weaker;
  bool operator==(const Preference&) const = default;
};

using Literal = std::variant<DomainAtom, Comparison, Preference>;

struct RuleClause {
  std::string label;
  Literal head;
  std::vector<DomainAtom> premises;  // bracketed, defeasible
  std::vector<Literal> conditions;   // body after `:-`
  int line = 0;                      // source line, not part of identity

  bool is_preference() const { return std::holds_alternative<Preference>(head); }
  bool operator==(const RuleClause& other) const {
    return label == other.label && head == other.head && premises == other.premises &&
           conditions == other.conditions;
  }
};

/// Unordered conflict between two literals. The first-seen orientation is kept
/// so rendering reproduces the source order.
struct ComplementPair {
  DomainAtom first;
  DomainAtom second;

  bool matches(const DomainAtom& a, const DomainAtom& b) const {
    return (first == a && second == b) || (first == b && second == a);
  }
  bool operator==(const ComplementPair& o) const { return matches(o.first, o.second); }
};

struct Theory {
  std::vector<RuleClause> rules;
  std::vector<ComplementPair> complements;
  std::vector<DomainAtom> abducibles;

  const RuleClause* find(std::string_view label) const;
  bool operator==(const Theory&) const = default;
};

}  // namespace arbiter
