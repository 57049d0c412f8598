#include "arbiter/explainer.hpp"

#include "arbiter/diagnostics.hpp"
#include "arbiter/rule_lang.hpp"

#include <algorithm>
#include <set>

namespace arbiter {

namespace {

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

std::string label_of(const Literal& l) {
  if (const auto* a = std::get_if<DomainAtom>(&l)) return render(*a);
  return render(l);
}

}  // namespace

Explanations explain(const DecisionResult& result, const GroundIndex& index, const PriorityRelation& prio) {
  Explanations out;
  std::vector<Argument> competitors;
  for (auto& a : build_arguments(index)) {
    if (a.level == 0) competitors.push_back(std::move(a));
  }

  for (const auto& option : result.acceptable_options) {
    auto it = result.per_option.find(option);
    if (it == result.per_option.end() || it->second.empty()) {
      throw Error(Code::InconsistentInputs, "option '" + option + "' has no acceptable argument");
    }
    for (const auto& arg : it->second) {
      Explanation e;
      e.option = option;
      for (const auto& id : arg.derivation) {
        const GroundRule* r = index.find(id);
        if (!r) throw Error(Code::InconsistentInputs, "rule instance '" + id + "' is not in the ground program");
        e.decision_rules.push_back(*r);
      }
      if (label_of(e.decision_rules.front().head) != option) {
        throw Error(Code::InconsistentInputs, "argument for '" + option + "' concludes something else");
      }

      std::vector<std::string> priority_ids;
      for (const auto& mine : e.decision_rules) {
        for (const auto& other : competitors) {
          if (!index.complementary(std::get<DomainAtom>(other.conclusion), mine.domain_head())) continue;
          const GroundRule& their_top = index.rule(other.top);
          Defeat d;
          d.competing_option = label_of(other.conclusion);
          d.competing_rule = their_top.instance_id;
          d.competing_schema = their_top.schema_label;
          d.rule = mine.instance_id;
          d.chain = priority_chain(index, prio, mine, their_top);
          if (prio.stronger(1, their_top.schema_label, mine.schema_label)) {
            throw Error(Code::InconsistentInputs,
                        "argument for '" + option + "' is strictly defeated by '" + their_top.instance_id + "'");
          }
          for (const auto& p : d.chain) push_unique(priority_ids, p);
          push_unique(e.defeated, d);
        }
      }

      for (const auto& id : priority_ids) e.priority_rules.push_back(index.rule(id));
      std::stable_sort(e.priority_rules.begin(), e.priority_rules.end(),
                       [](const GroundRule& a, const GroundRule& b) { return a.level < b.level; });

      for (const auto& r : e.decision_rules) {
        for (const auto& f : r.facts_used) push_unique(e.facts_used, f);
        for (const auto& a : r.assumptions) push_unique(e.assumptions, a);
      }
      for (const auto& r : e.priority_rules) {
        for (const auto& f : r.facts_used) push_unique(e.facts_used, f);
      }
      out[option].push_back(std::move(e));
    }
  }
  return out;
}

Explanations explain(const DecisionResult& result, const GroundIndex& index) {
  return explain(result, index, strict_priorities(index));
}

bool replay(const Explanation& expl, const Theory& theory) {
  if (expl.decision_rules.empty()) return false;

  QueryContext ctx;
  for (const auto& f : expl.facts_used) {
    if (f.arity() == 0) {
      ctx.facts.insert(f.predicate);
    } else if (f.arity() == 1 && f.args[0].kind == Term::Kind::Number) {
      ctx.bind(f.predicate, f.args[0].number);
    } else {
      return false;
    }
  }
  for (const auto& a : expl.assumptions) ctx.assume(a);

  GroundProgram ground;
  try {
    ground = ground_theory(theory, ctx);
  } catch (const Error&) {
    return false;
  }
  const GroundIndex index(ground, theory);

  // The decision rules must be re-derivable, satisfied and identical.
  std::set<std::string> heads;
  for (const auto& r : expl.decision_rules) {
    const GroundRule* g = index.find(r.instance_id);
    if (!g || !g->satisfied || g->is_preference() || g->head != r.head) return false;
    heads.insert(atom_key(g->domain_head()));
  }
  if (label_of(expl.decision_rules.front().head) != expl.option) return false;
  for (std::size_t i = 0; i < expl.decision_rules.size(); ++i) {
    for (std::size_t j = i + 1; j < expl.decision_rules.size(); ++j) {
      if (index.complementary(expl.decision_rules[i].domain_head(), expl.decision_rules[j].domain_head())) {
        return false;
      }
    }
  }
  std::set<std::string> derived;
  std::vector<const GroundRule*> left;
  for (const auto& r : expl.decision_rules) left.push_back(index.find(r.instance_id));
  for (bool progress = true; progress && !left.empty();) {
    progress = false;
    for (auto it = left.begin(); it != left.end();) {
      const bool ready = std::all_of((*it)->dependencies.begin(), (*it)->dependencies.end(),
                                     [&](const DomainAtom& d) { return derived.count(atom_key(d)) > 0; });
      if (ready) {
        derived.insert(atom_key((*it)->domain_head()));
        it = left.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  if (!left.empty()) return false;

  // Defeat chains: first link relates the two clashing schemas, each further
  // link prefers an earlier link's schema one level up.
  auto listed = [&](const std::string& id) {
    return std::any_of(expl.priority_rules.begin(), expl.priority_rules.end(),
                       [&](const GroundRule& r) { return r.instance_id == id; });
  };
  for (const auto& d : expl.defeated) {
    if (d.chain.empty()) continue;
    const auto mine = std::find_if(expl.decision_rules.begin(), expl.decision_rules.end(),
                                   [&](const GroundRule& r) { return r.instance_id == d.rule; });
    if (mine == expl.decision_rules.end()) return false;
    std::vector<const GroundRule*> links;
    for (const auto& id : d.chain) {
      const GroundRule* g = index.find(id);
      if (!g || !g->is_preference() || !listed(id)) return false;
      links.push_back(g);
    }
    const auto& first = links.front()->preference();
    if (links.front()->level != mine->level + 1 || first.stronger != mine->schema_label ||
        first.weaker != d.competing_schema) {
      return false;
    }
    for (std::size_t i = 1; i < links.size(); ++i) {
      const bool anchored = std::any_of(links.begin(), links.begin() + static_cast<std::ptrdiff_t>(i),
                                        [&](const GroundRule* prev) {
                                          return prev->level + 1 == links[i]->level &&
                                                 prev->schema_label == links[i]->preference().stronger;
                                        });
      if (!anchored) return false;
    }
  }
  return true;
}

bool attribution_complete(const Explanation& expl) {
  auto matched = [&](const DomainAtom& f, const std::vector<GroundRule>& rules) {
    return std::any_of(rules.begin(), rules.end(), [&](const GroundRule& r) {
      return std::find(r.facts_used.begin(), r.facts_used.end(), f) != r.facts_used.end() ||
             std::find(r.assumptions.begin(), r.assumptions.end(), f) != r.assumptions.end();
    });
  };
  for (const auto& f : expl.facts_used) {
    if (!matched(f, expl.decision_rules) && !matched(f, expl.priority_rules)) return false;
  }
  for (const auto& a : expl.assumptions) {
    if (!matched(a, expl.decision_rules)) return false;
  }
  return true;
}

std::string render_text(const Explanation& expl) {
  auto describe = [](const GroundRule& r) {
    std::string s = r.schema_label;
    if (!r.conditions.empty() || !r.premises.empty()) {
      s += " [";
      bool first = true;
      for (const auto& c : r.conditions) {
        if (!first) s += ", ";
        first = false;
        s += render(c);
      }
      for (const auto& p : r.premises) {
        if (!first) s += ", ";
        first = false;
        s += render(p);
      }
      s += "]";
    }
    return s;
  };
  auto schema = [&](const std::string& id) {
    for (const auto& r : expl.priority_rules) {
      if (r.instance_id == id) return r.schema_label;
    }
    return id;
  };

  std::string out = expl.option + " because " + describe(expl.decision_rules.front());
  for (std::size_t i = 1; i < expl.decision_rules.size(); ++i) {
    out += ", using " + describe(expl.decision_rules[i]);
  }
  if (!expl.assumptions.empty()) {
    out += ", assuming ";
    for (std::size_t i = 0; i < expl.assumptions.size(); ++i) {
      if (i) out += ", ";
      out += render(expl.assumptions[i]);
    }
  }
  for (const auto& d : expl.defeated) {
    if (d.chain.empty()) {
      out += "; contested by " + d.competing_schema + " (" + d.competing_option + "), no priority either way";
      continue;
    }
    out += "; overrides " + d.competing_schema + " (" + d.competing_option + ")";
    for (const auto& p : d.chain) out += " because " + schema(p);
  }
  return out;
}

}  // namespace arbiter
