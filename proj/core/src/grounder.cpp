#include "arbiter/grounder.hpp"

#include "arbiter/diagnostics.hpp"
#include "arbiter/rule_lang.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace arbiter {

void QueryContext::assume(DomainAtom atom) {
  if (std::find(assumed.begin(), assumed.end(), atom) == assumed.end()) assumed.push_back(std::move(atom));
}

const GroundRule* GroundProgram::find(std::string_view instance_id) const {
  for (const auto& r : rules) {
    if (r.instance_id == instance_id) return &r;
  }
  return nullptr;
}

std::string atom_key(const DomainAtom& atom) { return render(atom); }

// ---- matching and evaluation ----

bool match(const Term& pattern, const Term& value, Binding& binding) {
  switch (pattern.kind) {
    case Term::Kind::Variable: {
      auto [it, inserted] = binding.emplace(pattern.name, value);
      return inserted || it->second == value;
    }
    case Term::Kind::Atom:
      return value.kind == Term::Kind::Atom && value.name == pattern.name;
    case Term::Kind::Number:
      return value.kind == Term::Kind::Number && value.number == pattern.number;
    case Term::Kind::Compound:
      if (value.kind != Term::Kind::Compound || value.name != pattern.name ||
          value.args.size() != pattern.args.size()) {
        return false;
      }
      for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (!match(pattern.args[i], value.args[i], binding)) return false;
      }
      return true;
    case Term::Kind::Arith:
      return false;
  }
  return false;
}

bool match(const DomainAtom& pattern, const DomainAtom& value, Binding& binding) {
  if (pattern.predicate != value.predicate || pattern.args.size() != value.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match(pattern.args[i], value.args[i], binding)) return false;
  }
  return true;
}

Term substitute(const Term& term, const Binding& binding) {
  if (term.kind == Term::Kind::Variable) {
    auto it = binding.find(term.name);
    if (it == binding.end()) throw Error(Code::UnboundVariable, "variable " + term.name + " is unbound");
    return it->second;
  }
  Term out = term;
  for (auto& a : out.args) a = substitute(a, binding);
  return out;
}

DomainAtom substitute(const DomainAtom& atom, const Binding& binding) {
  DomainAtom out{atom.predicate, {}};
  out.args.reserve(atom.args.size());
  for (const auto& a : atom.args) out.args.push_back(substitute(a, binding));
  return out;
}

namespace {

constexpr unsigned long kMaxExactExponent = 4096;

bool is_zero(const Numeric& n) { return n.is_exact ? n.exact == Decimal(0) : n.approx == 0.0; }

Numeric finite_or_throw(double v) {
  if (!std::isfinite(v)) throw Error(Code::ArithmeticError, "arithmetic result is not a finite number");
  return Numeric::inexact(v);
}

}  // namespace

Numeric evaluate(const Term& term, const Binding& binding) {
  switch (term.kind) {
    case Term::Kind::Number:
      return Numeric::of(term.number);
    case Term::Kind::Variable: {
      auto it = binding.find(term.name);
      if (it == binding.end()) throw Error(Code::UnboundVariable, "variable " + term.name + " is unbound");
      if (it->second.kind != Term::Kind::Number) {
        throw Error(Code::ArithmeticError,
                    "variable " + term.name + " is bound to non-numeric '" + render(it->second) + "'");
      }
      return Numeric::of(it->second.number);
    }
    case Term::Kind::Arith: {
      const Numeric a = evaluate(term.args[0], binding);
      const Numeric b = evaluate(term.args[1], binding);
      const bool exact = a.is_exact && b.is_exact;
      switch (term.op) {
        case ArithOp::Add: return exact ? Numeric::of(a.exact + b.exact) : finite_or_throw(a.approx + b.approx);
        case ArithOp::Sub: return exact ? Numeric::of(a.exact - b.exact) : finite_or_throw(a.approx - b.approx);
        case ArithOp::Mul: return exact ? Numeric::of(a.exact * b.exact) : finite_or_throw(a.approx * b.approx);
        case ArithOp::Div:
          if (is_zero(b)) throw Error(Code::ArithmeticError, "division by zero in '" + render(term) + "'");
          return exact ? Numeric::of(a.exact / b.exact) : finite_or_throw(a.approx / b.approx);
        case ArithOp::Pow:
          if (exact && b.exact.is_integer() && b.exact >= Decimal(0) &&
              b.exact <= Decimal(static_cast<long long>(kMaxExactExponent))) {
            return Numeric::of(a.exact.pow(static_cast<unsigned long>(b.exact.to_double())));
          }
          return finite_or_throw(std::pow(a.approx, b.approx));
      }
      break;
    }
    default:
      break;
  }
  throw Error(Code::ArithmeticError, "'" + render(term) + "' is not an arithmetic expression");
}

bool eval_builtin(CmpOp cmp, const Numeric& lhs, const Numeric& rhs) {
  std::partial_ordering ord = std::partial_ordering::unordered;
  if (lhs.is_exact && rhs.is_exact) {
    ord = lhs.exact <=> rhs.exact;
  } else {
    ord = round_significant12(lhs.approx) <=> round_significant12(rhs.approx);
  }
  switch (cmp) {
    case CmpOp::Gt: return ord == std::partial_ordering::greater;
    case CmpOp::Lt: return ord == std::partial_ordering::less;
    case CmpOp::Ge: return ord == std::partial_ordering::greater || ord == std::partial_ordering::equivalent;
    case CmpOp::Le: return ord == std::partial_ordering::less || ord == std::partial_ordering::equivalent;
    case CmpOp::Eq: return ord == std::partial_ordering::equivalent;
  }
  return false;
}

bool eval_builtin(CmpOp cmp, const Decimal& lhs, const Decimal& rhs) {
  return eval_builtin(cmp, Numeric::of(lhs), Numeric::of(rhs));
}

// ---- grounding ----

namespace {

enum class Source { Fact, Assumed, Derived };

class AtomStore {
 public:
  bool add(const DomainAtom& atom, Source src) {
    auto key = atom_key(atom);
    if (!source_.emplace(key, src).second) return false;
    by_pred_[atom.predicate].push_back(atom);
    return true;
  }
  const std::vector<DomainAtom>& candidates(const std::string& pred) const {
    static const std::vector<DomainAtom> none;
    auto it = by_pred_.find(pred);
    return it == by_pred_.end() ? none : it->second;
  }
  const Source* source(const std::string& key) const {
    auto it = source_.find(key);
    return it == source_.end() ? nullptr : &it->second;
  }

 private:
  std::unordered_map<std::string, std::vector<DomainAtom>> by_pred_;
  std::unordered_map<std::string, Source> source_;
};

struct Match {
  Binding binding;
  std::vector<const DomainAtom*> matched;  // per domain condition, in order
};

// Enumerates bindings for the domain conditions of `rule`, in written order.
template <typename F>
void enumerate(const std::vector<const DomainAtom*>& conds, std::size_t i, const AtomStore& store,
               Match& m, F&& emit) {
  if (i == conds.size()) {
    emit(m);
    return;
  }
  for (const auto& cand : store.candidates(conds[i]->predicate)) {
    Binding saved = m.binding;
    if (match(*conds[i], cand, m.binding)) {
      m.matched.push_back(&cand);
      enumerate(conds, i + 1, store, m, emit);
      m.matched.pop_back();
    }
    m.binding = std::move(saved);
  }
}

bool builtins_hold(const RuleClause& rule, const Binding& b) {
  for (const auto& c : rule.conditions) {
    if (const auto* cmp = std::get_if<Comparison>(&c)) {
      if (!eval_builtin(cmp->op, evaluate(cmp->lhs, b), evaluate(cmp->rhs, b))) return false;
    }
  }
  return true;
}

std::vector<const DomainAtom*> domain_conditions(const RuleClause& r) {
  std::vector<const DomainAtom*> out;
  for (const auto& c : r.conditions) {
    if (const auto* a = std::get_if<DomainAtom>(&c)) out.push_back(a);
  }
  return out;
}

std::string instance_id(const std::string& label, const Binding& b) {
  if (b.empty()) return label;
  std::string out = label + "{";
  bool first = true;
  for (const auto& [name, value] : b) {
    if (!first) out += ',';
    first = false;
    out += name + "=" + render(value);
  }
  return out + "}";
}

Literal ground_condition(const Literal& c, const Binding& b) {
  if (const auto* a = std::get_if<DomainAtom>(&c)) return substitute(*a, b);
  const auto& cmp = std::get<Comparison>(c);
  return Comparison{cmp.op, substitute(cmp.lhs, b), substitute(cmp.rhs, b)};
}

bool is_abducible(const Theory& t, const DomainAtom& atom) {
  for (const auto& schema : t.abducibles) {
    Binding b;
    if (match(schema, atom, b)) return true;
  }
  return false;
}

void push_unique(std::vector<DomainAtom>& v, const DomainAtom& a) {
  if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
}

}  // namespace

GroundProgram ground_theory(const Theory& theory, const QueryContext& ctx) {
  const auto levels = rule_levels(theory);
  GroundProgram program;

  AtomStore store;
  for (const auto& f : ctx.facts) store.add(DomainAtom{f, {}}, Source::Fact);
  for (const auto& [name, values] : ctx.bindings) {
    for (const auto& v : values) store.add(DomainAtom{name, {Term::num(v)}}, Source::Fact);
  }
  for (const auto& a : ctx.assumed) store.add(a, Source::Assumed);

  // Derived literals: iterate level-0 rules to a fixpoint, re-running only
  // rules whose body mentions a predicate that grew in the previous round.
  std::vector<const RuleClause*> decision_rules;
  for (const auto& r : theory.rules) {
    if (!r.is_preference()) decision_rules.push_back(&r);
  }
  std::unordered_set<std::string> grown;
  bool first_round = true;
  while (first_round || !grown.empty()) {
    std::unordered_set<std::string> next;
    for (const auto* r : decision_rules) {
      if (!first_round) {
        bool touched = std::any_of(r->premises.begin(), r->premises.end(),
                                   [&](const DomainAtom& p) { return grown.count(p.predicate) > 0; });
        for (const auto& c : r->conditions) {
          if (const auto* a = std::get_if<DomainAtom>(&c)) touched = touched || grown.count(a->predicate) > 0;
        }
        if (!touched) continue;
      }
      const auto conds = domain_conditions(*r);
      std::vector<DomainAtom> heads;
      Match m;
      enumerate(conds, 0, store, m, [&](const Match& found) {
        if (!builtins_hold(*r, found.binding)) return;
        for (const auto& p : r->premises) {
          const DomainAtom g = substitute(p, found.binding);
          if (!store.source(atom_key(g)) && !is_abducible(theory, g)) return;
        }
        heads.push_back(substitute(std::get<DomainAtom>(r->head), found.binding));
      });
      for (const auto& h : heads) {
        if (store.add(h, Source::Derived)) next.insert(h.predicate);
      }
    }
    grown = std::move(next);
    first_round = false;
  }

  for (const auto& r : theory.rules) {
    const int level = levels.at(r.label);
    program.max_level = std::max(program.max_level, level);
    const auto conds = domain_conditions(r);
    std::unordered_set<std::string> emitted;
    Match m;
    enumerate(conds, 0, store, m, [&](const Match& found) {
      if (!builtins_hold(r, found.binding)) return;
      GroundRule g;
      g.schema_label = r.label;
      g.instance_id = instance_id(r.label, found.binding);
      if (!emitted.insert(g.instance_id).second) return;
      g.level = level;
      if (const auto* pref = std::get_if<Preference>(&r.head)) {
        g.head = *pref;
      } else {
        g.head = substitute(std::get<DomainAtom>(r.head), found.binding);
      }
      for (std::size_t i = 0; i < conds.size(); ++i) {
        const DomainAtom& atom = *found.matched[i];
        switch (*store.source(atom_key(atom))) {
          case Source::Fact: push_unique(g.facts_used, atom); break;
          case Source::Assumed: push_unique(g.assumptions, atom); break;
          case Source::Derived: push_unique(g.dependencies, atom); break;
        }
      }
      for (const auto& c : r.conditions) g.conditions.push_back(ground_condition(c, found.binding));
      for (const auto& p : r.premises) {
        DomainAtom gp = substitute(p, found.binding);
        const Source* src = store.source(atom_key(gp));
        if (src && *src == Source::Fact) {
          push_unique(g.facts_used, gp);
        } else if (src && *src == Source::Assumed) {
          push_unique(g.assumptions, gp);
        } else if (src) {
          push_unique(g.dependencies, gp);
        } else if (level == 0 && is_abducible(theory, gp)) {
          push_unique(g.open_assumptions, gp);
        } else {
          return;
        }
        g.premises.push_back(std::move(gp));
      }
      g.satisfied = g.open_assumptions.empty();
      program.rules.push_back(std::move(g));
    });
  }
  return program;
}

}  // namespace arbiter
