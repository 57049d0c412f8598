#pragma once

#include "arbiter/engine.hpp"

#include <map>
#include <string>
#include <vector>

namespace arbiter {

/// A competing argument the explained one stands up to. An empty chain means
/// neither side is strictly stronger (mutual attack).
struct Defeat {
  std::string competing_option;  // conclusion of the competing argument
  std::string competing_rule;    // its top rule instance
  std::string competing_schema;
  std::string rule;              // the explained argument's rule it clashes with
  std::vector<std::string> chain;  // prefer-instances, lowest level first

  bool operator==(const Defeat&) const = default;
};

struct Explanation {
  std::string option;
  std::vector<GroundRule> decision_rules;  // top rule first
  std::vector<GroundRule> priority_rules;  // ordered by level
  std::vector<DomainAtom> facts_used;
  std::vector<DomainAtom> assumptions;
  std::vector<Defeat> defeated;

  bool operator==(const Explanation&) const = default;
};

using Explanations = std::map<std::string, std::vector<Explanation>>;

/// One explanation per acceptable argument. Throws InconsistentInputs when
/// `result` was not computed from `index`.
Explanations explain(const DecisionResult& result, const GroundIndex& index, const PriorityRelation& prio);
Explanations explain(const DecisionResult& result, const GroundIndex& index);

/// Re-grounds the theory on the explanation's own facts and assumptions and
/// checks that its rules still derive the option and every defeat chain still
/// holds. False means the explanation is unfaithful.
bool replay(const Explanation& expl, const Theory& theory);

/// Every listed fact is matched by some listed rule.
bool attribution_complete(const Explanation& expl);

/// "accept because r4 [cond, ...]; overrides r3 because p2 because c1"
std::string render_text(const Explanation& expl);

}  // namespace arbiter
