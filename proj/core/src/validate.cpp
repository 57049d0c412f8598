#include "arbiter/rule_lang.hpp"

#include <algorithm>

namespace arbiter {

namespace {

bool same_schema(const DomainAtom& a, const DomainAtom& b) {
  return a.predicate == b.predicate && a.arity() == b.arity();
}

bool complemented(const Theory& t, const DomainAtom& a) {
  return std::any_of(t.complements.begin(), t.complements.end(), [&](const ComplementPair& p) {
    return same_schema(p.first, a) || same_schema(p.second, a);
  });
}

bool complementary(const Theory& t, const DomainAtom& a, const DomainAtom& b) {
  return std::any_of(t.complements.begin(), t.complements.end(), [&](const ComplementPair& p) {
    return (same_schema(p.first, a) && same_schema(p.second, b)) ||
           (same_schema(p.first, b) && same_schema(p.second, a));
  });
}

template <typename F>
void for_each_body_atom(const RuleClause& r, F&& f) {
  for (const auto& p : r.premises) f(p, true);
  for (const auto& c : r.conditions) {
    if (const auto* a = std::get_if<DomainAtom>(&c)) f(*a, false);
  }
}

Diagnostic make(Severity s, Code c, std::string message, const RuleClause* r = nullptr) {
  Diagnostic d;
  d.severity = s;
  d.code = c;
  d.message = std::move(message);
  if (r) {
    d.line = r->line;
    d.column = r->line > 0 ? 1 : 0;
    d.subject = r->label;
  }
  return d;
}

}  // namespace

std::vector<Diagnostic> validate_theory(const Theory& theory) {
  std::vector<Diagnostic> out;
  const std::set<std::string> derived = derived_predicates(theory);
  std::set<std::string> abducible_preds;
  for (const auto& a : theory.abducibles) abducible_preds.insert(a.predicate);

  std::set<std::string> used_in_body;
  for (const auto& r : theory.rules) {
    for_each_body_atom(r, [&](const DomainAtom& a, bool) { used_in_body.insert(a.predicate); });
  }

  // Preference rules are evaluated against the query context only.
  for (const auto& r : theory.rules) {
    if (!r.is_preference()) continue;
    if (!r.premises.empty()) {
      out.push_back(make(Severity::Error, Code::PreferDependsOnDerived,
                         "preference rule '" + r.label + "' must not have premises", &r));
    }
    for (const auto& c : r.conditions) {
      const auto* a = std::get_if<DomainAtom>(&c);
      if (a && (derived.count(a->predicate) || abducible_preds.count(a->predicate))) {
        out.push_back(make(Severity::Error, Code::PreferDependsOnDerived,
                           "preference rule '" + r.label + "' conditions on '" + a->predicate +
                               "', which is not an input",
                           &r));
      }
    }
  }

  // Input vocabulary: propositional atoms or single numeric arguments.
  std::set<std::string> reported;
  for (const auto& r : theory.rules) {
    for_each_body_atom(r, [&](const DomainAtom& a, bool) {
      if (derived.count(a.predicate) || abducible_preds.count(a.predicate)) return;
      bool ok = a.arity() == 0;
      if (a.arity() == 1) {
        const auto k = a.args[0].kind;
        ok = k == Term::Kind::Variable || k == Term::Kind::Number;
      }
      if (!ok && reported.insert(a.predicate).second) {
        out.push_back(make(Severity::Error, Code::UnsupportedInputArity,
                           "input '" + render(a) +
                               "' must be propositional or take a single numeric argument",
                           &r));
      }
    });
  }

  std::vector<const RuleClause*> decisions;
  for (const auto& r : theory.rules) {
    if (!r.is_preference()) decisions.push_back(&r);
  }

  std::set<std::string> missing_reported;
  for (const auto* r : decisions) {
    const auto& head = std::get<DomainAtom>(r->head);
    if (used_in_body.count(head.predicate) || complemented(theory, head)) continue;
    if (missing_reported.insert(render(head)).second) {
      out.push_back(make(Severity::Warning, Code::MissingComplement,
                         "conclusion '" + render(head) + "' has no complement declaration", r));
    }
  }

  std::set<std::string> governed;
  for (const auto& r : theory.rules) {
    if (const auto* p = std::get_if<Preference>(&r.head)) {
      governed.insert(p->stronger);
      governed.insert(p->weaker);
    }
  }
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    for (std::size_t j = i + 1; j < decisions.size(); ++j) {
      const auto* a = decisions[i];
      const auto* b = decisions[j];
      if (governed.count(a->label) || governed.count(b->label)) continue;
      if (!complementary(theory, std::get<DomainAtom>(a->head), std::get<DomainAtom>(b->head))) {
        continue;
      }
      auto d = make(Severity::Info, Code::UngovernedConflict,
                    "rules '" + a->label + "' and '" + b->label +
                        "' conclude complementary options and no preference relates them; "
                        "only disjoint scenarios keep them apart",
                    a);
      out.push_back(std::move(d));
    }
  }

  for (const auto& a : theory.abducibles) {
    bool used = false;
    for (const auto& r : theory.rules) {
      for_each_body_atom(r, [&](const DomainAtom& b, bool) { used = used || same_schema(a, b); });
    }
    if (!used) {
      Diagnostic d = make(Severity::Warning, Code::UnusedAbducible,
                          "abducible '" + render(a) + "' is not used by any rule");
      d.subject = render(a);
      out.push_back(std::move(d));
    }
  }

  // Derivable predicates: inputs and abducibles are assumed available, derived
  // predicates need a rule whose own dependencies are derivable.
  std::set<std::string> derivable;
  auto available = [&](const std::string& p) {
    return !derived.count(p) || derivable.count(p) || abducible_preds.count(p);
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto* r : decisions) {
      const auto& head = std::get<DomainAtom>(r->head);
      if (derivable.count(head.predicate)) continue;
      bool ok = true;
      for_each_body_atom(*r, [&](const DomainAtom& a, bool) { ok = ok && available(a.predicate); });
      if (ok) {
        derivable.insert(head.predicate);
        changed = true;
      }
    }
  }
  for (const auto& r : theory.rules) {
    bool ok = true;
    std::string missing;
    for_each_body_atom(r, [&](const DomainAtom& a, bool) {
      if (ok && !available(a.predicate)) {
        ok = false;
        missing = a.predicate;
      }
    });
    if (!ok) {
      out.push_back(make(Severity::Warning, Code::UnreachableRule,
                         "rule '" + r.label + "' depends on '" + missing +
                             "', which no rule can derive",
                         &r));
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return static_cast<int>(a.severity) > static_cast<int>(b.severity);
  });
  return out;
}

}  // namespace arbiter
