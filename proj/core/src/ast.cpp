#include "arbiter/ast.hpp"

#include <algorithm>

namespace arbiter {

std::string_view to_string(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
    case ArithOp::Pow: return "**";
  }
  return "+";
}

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "=<";
    case CmpOp::Eq: return "=";
  }
  return "=";
}

Term Term::atom(std::string name) {
  Term t;
  t.kind = Kind::Atom;
  t.name = std::move(name);
  return t;
}

Term Term::num(Decimal value) {
  Term t;
  t.kind = Kind::Number;
  t.number = std::move(value);
  return t;
}

Term Term::var(std::string name) {
  Term t;
  t.kind = Kind::Variable;
  t.name = std::move(name);
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Compound;
  t.name = std::move(functor);
  t.args = std::move(args);
  return t;
}

Term Term::arith(ArithOp op, Term lhs, Term rhs) {
  Term t;
  t.kind = Kind::Arith;
  t.op = op;
  t.args.push_back(std::move(lhs));
  t.args.push_back(std::move(rhs));
  return t;
}

bool Term::is_ground() const {
  if (kind == Kind::Variable) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

bool DomainAtom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

const RuleClause* Theory::find(std::string_view label) const {
  for (const auto& r : rules) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

}  // namespace arbiter
