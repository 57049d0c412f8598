#include "oracle.hpp"

#include "arbiter/diagnostics.hpp"
#include "arbiter/rule_lang.hpp"

#include <vector>

namespace arbiter::oracle {

namespace {

using Mask = unsigned;

bool has(Mask m, std::size_t i) { return (m >> i) & 1U; }

struct Program {
  const std::vector<GroundRule>& rules;
  const Theory& theory;

  bool complement(const DomainAtom& a, const DomainAtom& b) const {
    for (const auto& p : theory.complements) {
      Binding x;
      if (match(p.first, a, x) && match(p.second, b, x)) return true;
      Binding y;
      if (match(p.second, a, y) && match(p.first, b, y)) return true;
    }
    return false;
  }

  std::string key(const DomainAtom& a) const { return render(a); }

  // Every dependency of every member is concluded by a member.
  bool closed(Mask s) const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!has(s, i)) continue;
      for (const auto& d : rules[i].dependencies) {
        bool supported = false;
        for (std::size_t j = 0; j < rules.size() && !supported; ++j) {
          supported = has(s, j) && key(rules[j].domain_head()) == key(d);
        }
        if (!supported) return false;
      }
    }
    return true;
  }

  // Members can be ordered so each dependency is concluded earlier.
  bool well_founded(Mask s) const {
    Mask done = 0;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        if (!has(s, i) || has(done, i)) continue;
        bool ready = true;
        for (const auto& d : rules[i].dependencies) {
          bool ok = false;
          for (std::size_t j = 0; j < rules.size() && !ok; ++j) {
            ok = has(done, j) && key(rules[j].domain_head()) == key(d);
          }
          ready = ready && ok;
        }
        if (ready) {
          done |= 1U << i;
          grew = true;
        }
      }
    }
    return done == s;
  }

  bool consistent(Mask s) const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      for (std::size_t j = i + 1; j < rules.size(); ++j) {
        if (has(s, i) && has(s, j) && complement(rules[i].domain_head(), rules[j].domain_head())) return false;
      }
    }
    return true;
  }

  bool derives(Mask s, const std::string& conclusion) const {
    bool concluded = false;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      concluded = concluded || (has(s, i) && key(rules[i].domain_head()) == conclusion);
    }
    return concluded && closed(s) && well_founded(s);
  }
};

struct Candidate {
  Mask members;
  std::size_t top;
};

}  // namespace

OracleVerdict brute_force_acceptable(const GroundProgram& ground, const Theory& theory) {
  if (ground.rules.size() > kMaxGroundRules) {
    throw Error(Code::TooLarge, "oracle is limited to " + std::to_string(kMaxGroundRules) + " ground rules");
  }
  const Program prog{ground.rules, theory};
  const auto& rules = ground.rules;
  const std::size_t n = rules.size();

  Mask usable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rules[i].satisfied && !rules[i].is_preference()) usable |= 1U << i;
  }

  // Composite arguments: a subset S of usable level-0 rules with a top rule t
  // such that S derives head(t), no proper subset of S does, and S holds no
  // complementary heads.
  std::vector<Candidate> arguments;
  for (Mask s = 1; s < (1U << n); ++s) {
    if ((s & ~usable) != 0 || !prog.consistent(s)) continue;
    for (std::size_t t = 0; t < n; ++t) {
      if (!has(s, t)) continue;
      const std::string c = prog.key(rules[t].domain_head());
      if (!prog.derives(s, c)) continue;
      bool minimal = true;
      for (Mask sub = (s - 1) & s; minimal; sub = (sub - 1) & s) {
        if (prog.derives(sub, c)) minimal = false;
        if (sub == 0) break;
      }
      // With a unique conclusion holder, t is the only member concluding c.
      bool unique_top = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != t && has(s, j) && prog.key(rules[j].domain_head()) == c) unique_top = false;
      }
      if (minimal && unique_top) arguments.push_back(Candidate{s, t});
    }
  }

  // Priorities, from the highest level of the theory down to level 1.
  int top_level = 0;
  for (const auto& [label, level] : rule_levels(theory)) top_level = std::max(top_level, level);

  std::map<int, std::set<std::pair<std::string, std::string>>> strict;
  OracleVerdict verdict;
  auto strictly_above = [&](int level, const std::string& a, const std::string& b) {
    return strict[level].count({a, b}) > 0 && strict[level].count({b, a}) == 0;
  };
  for (int k = top_level; k >= 1; --k) {
    std::vector<std::size_t> acceptable;
    for (std::size_t i = 0; i < n; ++i) {
      if (rules[i].level != k || !rules[i].is_preference() || !rules[i].satisfied) continue;
      const auto& p = rules[i].preference();
      bool defeated = false;
      if (k < top_level) {
        for (std::size_t j = 0; j < n; ++j) {
          if (rules[j].level != k || !rules[j].is_preference() || !rules[j].satisfied) continue;
          const auto& q = rules[j].preference();
          const bool opposite = q.stronger == p.weaker && q.weaker == p.stronger;
          if (opposite && strictly_above(k + 1, rules[j].schema_label, rules[i].schema_label)) defeated = true;
        }
      }
      if (!defeated) acceptable.push_back(i);
    }
    for (std::size_t i : acceptable) {
      const auto& p = rules[i].preference();
      verdict.acceptable_prefer_conclusions[k].insert("prefer(" + p.stronger + "," + p.weaker + ")");
      bool opposed = false;
      for (std::size_t j : acceptable) {
        const auto& q = rules[j].preference();
        opposed = opposed || (q.stronger == p.weaker && q.weaker == p.stronger);
      }
      if (!opposed) strict[k].insert({p.stronger, p.weaker});
    }
  }

  // Options are conclusions never used in a rule body.
  std::set<std::string> body;
  for (const auto& r : theory.rules) {
    for (const auto& p : r.premises) body.insert(p.predicate);
    for (const auto& c : r.conditions) {
      if (const auto* a = std::get_if<DomainAtom>(&c)) body.insert(a->predicate);
    }
  }

  for (const auto& a : arguments) {
    bool defeated = false;
    for (std::size_t r = 0; r < n && !defeated; ++r) {
      if (!has(a.members, r)) continue;
      for (const auto& b : arguments) {
        if (!prog.complement(rules[b.top].domain_head(), rules[r].domain_head())) continue;
        if (strictly_above(1, rules[b.top].schema_label, rules[r].schema_label)) {
          defeated = true;
          break;
        }
      }
    }
    const auto& head = rules[a.top].domain_head();
    if (!defeated && !body.count(head.predicate)) verdict.acceptable_options.insert(render(head));
  }
  return verdict;
}

}  // namespace arbiter::oracle
