#include "arbiter/engine.hpp"

#include "arbiter/diagnostics.hpp"
#include "arbiter/rule_lang.hpp"

#include <algorithm>
#include <unordered_map>

namespace arbiter {

bool PriorityRelation::stronger(int level, const std::string& a_schema, const std::string& b_schema) const {
  auto it = strict.find(level);
  return it != strict.end() && it->second.count({a_schema, b_schema}) > 0;
}

// ---- GroundIndex ----

GroundIndex::GroundIndex(const GroundProgram& program, const Theory& theory)
    : program_(program), theory_(theory), body_predicates_(body_predicates(theory)) {
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto& r = program.rules[i];
    by_id_.emplace(r.instance_id, i);
    if (!r.is_preference() && r.satisfied) supporters_[atom_key(r.domain_head())].push_back(i);
  }
}

const GroundRule& GroundIndex::rule(const std::string& instance_id) const {
  return program_.rules[by_id_.at(instance_id)];
}

const GroundRule* GroundIndex::find(const std::string& instance_id) const {
  auto it = by_id_.find(instance_id);
  return it == by_id_.end() ? nullptr : &program_.rules[it->second];
}

const std::vector<std::size_t>& GroundIndex::supporters(const std::string& key) const {
  static const std::vector<std::size_t> none;
  auto it = supporters_.find(key);
  return it == supporters_.end() ? none : it->second;
}

bool GroundIndex::complementary(const DomainAtom& a, const DomainAtom& b) const {
  for (const auto& pair : theory_.complements) {
    Binding b1;
    if (match(pair.first, a, b1) && match(pair.second, b, b1)) return true;
    Binding b2;
    if (match(pair.first, b, b2) && match(pair.second, a, b2)) return true;
  }
  return false;
}

bool GroundIndex::conflicting(const Literal& a, const Literal& b) const {
  const auto* pa = std::get_if<Preference>(&a);
  const auto* pb = std::get_if<Preference>(&b);
  if (pa && pb) return pa->stronger == pb->weaker && pa->weaker == pb->stronger;
  const auto* da = std::get_if<DomainAtom>(&a);
  const auto* db = std::get_if<DomainAtom>(&b);
  return da && db && complementary(*da, *db);
}

bool GroundIndex::is_option(const DomainAtom& atom) const {
  return body_predicates_.count(atom.predicate) == 0;
}

std::string GroundIndex::option_id(const DomainAtom& atom) const { return render(atom); }

// ---- arguments ----

namespace {

struct Derivation {
  std::size_t top;
  std::vector<std::size_t> rules;
};

class ArgumentBuilder {
 public:
  explicit ArgumentBuilder(const GroundIndex& index) : index_(index), rules_(index.program().rules) {}

  std::vector<Derivation> for_top(std::size_t top) {
    found_.clear();
    chosen_.clear();
    in_set_.clear();
    const auto& t = rules_[top];
    chosen_[atom_key(t.domain_head())] = top;
    in_set_.push_back(top);
    std::vector<std::string> pending;
    for (const auto& d : t.dependencies) pending.push_back(atom_key(d));
    expand(top, pending);
    return std::move(found_);
  }

 private:
  void expand(std::size_t top, std::vector<std::string> pending) {
    while (!pending.empty()) {
      std::string need = std::move(pending.back());
      pending.pop_back();
      if (chosen_.count(need)) continue;
      for (std::size_t s : index_.supporters(need)) {
        const auto& rule = rules_[s];
        const bool clash = std::any_of(in_set_.begin(), in_set_.end(), [&](std::size_t o) {
          return index_.complementary(rules_[o].domain_head(), rule.domain_head());
        });
        if (clash) continue;
        chosen_[need] = s;
        in_set_.push_back(s);
        auto next = pending;
        for (const auto& d : rule.dependencies) next.push_back(atom_key(d));
        expand(top, std::move(next));
        in_set_.pop_back();
        chosen_.erase(need);
      }
      return;
    }
    if (well_founded()) {
      if (++total_ > kMaxArguments) {
        throw Error(Code::TooLarge, "more than " + std::to_string(kMaxArguments) + " arguments");
      }
      std::vector<std::size_t> rules = in_set_;
      std::sort(rules.begin() + 1, rules.end());
      found_.push_back(Derivation{top, std::move(rules)});
    }
  }

  // Every rule's dependencies must bottom out in rules without dependencies.
  bool well_founded() const {
    std::vector<std::size_t> left = in_set_;
    std::map<std::string, bool> derived;
    bool progress = true;
    while (!left.empty() && progress) {
      progress = false;
      for (auto it = left.begin(); it != left.end();) {
        const auto& r = rules_[*it];
        const bool ready = std::all_of(r.dependencies.begin(), r.dependencies.end(),
                                       [&](const DomainAtom& d) { return derived.count(atom_key(d)) > 0; });
        if (ready) {
          derived[atom_key(r.domain_head())] = true;
          it = left.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
    }
    return left.empty();
  }

  const GroundIndex& index_;
  const std::vector<GroundRule>& rules_;
  std::map<std::string, std::size_t> chosen_;
  std::vector<std::size_t> in_set_;
  std::vector<Derivation> found_;
  std::size_t total_ = 0;
};

Argument to_argument(const GroundIndex& index, const Derivation& d) {
  const auto& rules = index.program().rules;
  Argument a;
  const auto& top = rules[d.top];
  a.conclusion = top.head;
  a.top = top.instance_id;
  a.level = top.level;
  for (std::size_t i : d.rules) {
    a.derivation.push_back(rules[i].instance_id);
    for (const auto& x : rules[i].assumptions) {
      if (std::find(a.assumptions.begin(), a.assumptions.end(), x) == a.assumptions.end()) a.assumptions.push_back(x);
    }
  }
  return a;
}

}  // namespace

std::vector<Argument> build_arguments(const GroundIndex& index) {
  std::vector<Argument> out;
  const auto& rules = index.program().rules;
  ArgumentBuilder builder(index);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    if (!r.satisfied) continue;
    if (r.is_preference()) {
      out.push_back(to_argument(index, Derivation{i, {i}}));
      continue;
    }
    for (const auto& d : builder.for_top(i)) out.push_back(to_argument(index, d));
  }
  return out;
}

std::vector<Argument> build_arguments(const GroundProgram& ground, const Theory& theory) {
  return build_arguments(GroundIndex(ground, theory));
}

bool conflicts(const Argument& a, const Argument& b, const Theory& theory) {
  GroundProgram empty;
  return GroundIndex(empty, theory).conflicting(a.conclusion, b.conclusion);
}

// ---- priorities ----

PriorityRelation strict_priorities(const GroundIndex& index) {
  PriorityRelation prio;
  const auto& rules = index.program().rules;
  for (int level = index.program().max_level; level >= 1; --level) {
    std::vector<const GroundRule*> at_level;
    for (const auto& r : rules) {
      if (r.level == level && r.satisfied && r.is_preference()) at_level.push_back(&r);
    }
    std::vector<const GroundRule*> accepted;
    for (const auto* r : at_level) {
      const auto& p = r->preference();
      const bool defeated = std::any_of(at_level.begin(), at_level.end(), [&](const GroundRule* o) {
        const auto& q = o->preference();
        return q.stronger == p.weaker && q.weaker == p.stronger &&
               prio.stronger(level + 1, o->schema_label, r->schema_label) &&
               !prio.stronger(level + 1, r->schema_label, o->schema_label);
      });
      if (!defeated) accepted.push_back(r);
    }
    auto& acc_ids = prio.acceptable[level];
    std::set<std::pair<std::string, std::string>> concluded;
    for (const auto* r : accepted) {
      acc_ids.push_back(r->instance_id);
      concluded.insert({r->preference().stronger, r->preference().weaker});
    }
    auto& strict = prio.strict[level];
    for (const auto& [a, b] : concluded) {
      if (!concluded.count({b, a})) strict.insert({a, b});
    }
  }
  return prio;
}

PriorityRelation strict_priorities(const GroundProgram& ground, const Theory& theory) {
  return strict_priorities(GroundIndex(ground, theory));
}

std::vector<std::string> priority_chain(const GroundIndex& index, const PriorityRelation& prio,
                                        const GroundRule& stronger, const GroundRule& weaker) {
  std::vector<std::string> chain;
  const int level = stronger.level + 1;
  if (!prio.stronger(level, stronger.schema_label, weaker.schema_label)) return chain;

  const auto& rules = index.program().rules;
  const auto acc_it = prio.acceptable.find(level);
  auto is_acceptable = [&](const GroundRule& r) {
    return acc_it != prio.acceptable.end() &&
           std::find(acc_it->second.begin(), acc_it->second.end(), r.instance_id) != acc_it->second.end();
  };
  auto concludes = [](const GroundRule& r, const std::string& a, const std::string& b) {
    return r.is_preference() && r.satisfied && r.preference().stronger == a && r.preference().weaker == b;
  };

  const GroundRule* chosen = nullptr;
  for (const auto& r : rules) {
    if (r.level == level && concludes(r, stronger.schema_label, weaker.schema_label) && is_acceptable(r)) {
      chosen = &r;
      break;
    }
  }
  if (!chosen) return chain;
  auto add = [&](const std::string& id) {
    if (std::find(chain.begin(), chain.end(), id) == chain.end()) chain.push_back(id);
  };
  add(chosen->instance_id);

  for (const auto& opposing : rules) {
    if (opposing.level != level || !concludes(opposing, weaker.schema_label, stronger.schema_label)) continue;
    // Prefer the already chosen instance as the defeater of each opposing one.
    const GroundRule* defeater = nullptr;
    if (prio.stronger(level + 1, chosen->schema_label, opposing.schema_label)) {
      defeater = chosen;
    } else {
      for (const auto& r : rules) {
        if (r.level == level && concludes(r, stronger.schema_label, weaker.schema_label) &&
            prio.stronger(level + 1, r.schema_label, opposing.schema_label)) {
          defeater = &r;
          break;
        }
      }
    }
    if (!defeater) continue;
    add(defeater->instance_id);
    for (const auto& id : priority_chain(index, prio, *defeater, opposing)) add(id);
  }
  return chain;
}

// ---- acceptance ----

DecisionResult acceptable_options(const GroundIndex& index) {
  DecisionResult result;
  const PriorityRelation prio = strict_priorities(index);
  std::vector<Argument> all = build_arguments(index);
  std::vector<Argument> args;
  for (auto& a : all) {
    if (a.level == 0) args.push_back(std::move(a));
  }

  // Group arguments by conclusion and precompute complementary conclusions.
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> key_index;
  std::vector<std::vector<std::size_t>> by_conclusion;
  std::vector<DomainAtom> conclusion_atom;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& atom = std::get<DomainAtom>(args[i].conclusion);
    auto key = atom_key(atom);
    auto [it, inserted] = key_index.emplace(key, keys.size());
    if (inserted) {
      keys.push_back(key);
      by_conclusion.emplace_back();
      conclusion_atom.push_back(atom);
    }
    by_conclusion[it->second].push_back(i);
  }
  std::unordered_map<std::string, std::vector<std::size_t>> attackers_of;  // head key -> conclusion indices
  auto attackers = [&](const DomainAtom& head) -> const std::vector<std::size_t>& {
    auto key = atom_key(head);
    auto it = attackers_of.find(key);
    if (it != attackers_of.end()) return it->second;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < keys.size(); ++c) {
      if (index.complementary(conclusion_atom[c], head)) out.push_back(c);
    }
    return attackers_of.emplace(key, std::move(out)).first->second;
  };

  for (auto& a : args) {
    bool defeated = false;
    for (const auto& id : a.derivation) {
      const GroundRule& r = index.rule(id);
      for (std::size_t c : attackers(r.domain_head())) {
        for (std::size_t bi : by_conclusion[c]) {
          const GroundRule& b_top = index.rule(args[bi].top);
          if (prio.stronger(1, b_top.schema_label, r.schema_label) &&
              !prio.stronger(1, r.schema_label, b_top.schema_label)) {
            defeated = true;
            break;
          }
          for (const auto& p : priority_chain(index, prio, r, b_top)) {
            if (std::find(a.support_priorities.begin(), a.support_priorities.end(), p) == a.support_priorities.end()) {
              a.support_priorities.push_back(p);
            }
          }
        }
        if (defeated) break;
      }
      if (defeated) break;
    }
    if (defeated) continue;
    const auto& atom = std::get<DomainAtom>(a.conclusion);
    if (!index.is_option(atom)) continue;
    for (const auto& x : a.assumptions) {
      if (std::find(result.assumptions_used.begin(), result.assumptions_used.end(), x) == result.assumptions_used.end()) {
        result.assumptions_used.push_back(x);
      }
    }
    result.per_option[index.option_id(atom)].push_back(a);
  }

  // Option order: theory options first, then any remaining ground options.
  const auto declared = theory_options(index.theory());
  for (const auto& o : declared) {
    if (result.per_option.count(o)) result.acceptable_options.push_back(o);
  }
  for (const auto& [o, list] : result.per_option) {
    if (std::find(declared.begin(), declared.end(), o) == declared.end()) result.acceptable_options.push_back(o);
  }

  for (std::size_t i = 0; i < result.acceptable_options.size() && !result.ambiguous; ++i) {
    for (std::size_t j = i + 1; j < result.acceptable_options.size(); ++j) {
      const auto& a = std::get<DomainAtom>(result.per_option[result.acceptable_options[i]].front().conclusion);
      const auto& b = std::get<DomainAtom>(result.per_option[result.acceptable_options[j]].front().conclusion);
      if (index.complementary(a, b)) {
        result.ambiguous = true;
        break;
      }
    }
  }
  return result;
}

DecisionResult acceptable_options(const GroundProgram& ground, const Theory& theory) {
  return acceptable_options(GroundIndex(ground, theory));
}

// ---- abduction ----

std::vector<DomainAtom> abducible_vocabulary(const Theory& theory, const QueryContext& ctx) {
  std::vector<DomainAtom> vocab;
  auto add = [&](const DomainAtom& a) {
    if (std::find(ctx.assumed.begin(), ctx.assumed.end(), a) != ctx.assumed.end()) return;
    if (std::find(vocab.begin(), vocab.end(), a) == vocab.end()) vocab.push_back(a);
  };
  for (const auto& a : theory.abducibles) {
    if (a.is_ground()) add(a);
  }
  for (const auto& r : ground_theory(theory, ctx).rules) {
    for (const auto& a : r.open_assumptions) add(a);
  }
  std::sort(vocab.begin(), vocab.end(),
            [](const DomainAtom& x, const DomainAtom& y) { return atom_key(x) < atom_key(y); });
  return vocab;
}

std::vector<AbductiveSolution> decide_with_abduction(const Theory& theory, const QueryContext& ctx,
                                                     const std::string& target) {
  const auto options = theory_options(theory);
  bool known = std::find(options.begin(), options.end(), target) != options.end();
  if (!known) {
    // Ground instance of a non-ground option schema.
    try {
      const DomainAtom t = parse_atom(target);
      const auto in_body = body_predicates(theory);
      for (const auto& r : theory.rules) {
        const auto* h = std::get_if<DomainAtom>(&r.head);
        Binding b;
        if (h && !in_body.count(h->predicate) && match(*h, t, b)) known = true;
      }
    } catch (const Error&) {
    }
  }
  if (!known) throw Error(Code::UnknownOption, "'" + target + "' is not an option of this application");

  const auto vocab = abducible_vocabulary(theory, ctx);
  if (vocab.size() > kMaxAbducibles) {
    throw Error(Code::TooLarge, std::to_string(vocab.size()) + " ground abducibles exceed the search limit of " +
                                    std::to_string(kMaxAbducibles));
  }

  std::vector<AbductiveSolution> solutions;
  std::vector<unsigned> found_masks;
  const unsigned n = static_cast<unsigned>(vocab.size());
  for (unsigned size = 0; size <= n; ++size) {
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) != size) continue;
      const bool superset = std::any_of(found_masks.begin(), found_masks.end(),
                                        [&](unsigned m) { return (mask & m) == m; });
      if (superset) continue;
      AbductiveSolution s;
      s.context = ctx;
      for (unsigned i = 0; i < n; ++i) {
        if (mask & (1U << i)) {
          s.assumptions.push_back(vocab[i]);
          s.context.assume(vocab[i]);
        }
      }
      s.ground = ground_theory(theory, s.context);
      s.result = acceptable_options(s.ground, theory);
      if (!s.result.per_option.count(target)) continue;
      found_masks.push_back(mask);
      solutions.push_back(std::move(s));
    }
  }
  return solutions;
}

}  // namespace arbiter
