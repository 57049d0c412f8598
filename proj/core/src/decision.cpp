#include "arbiter/decision.hpp"

namespace arbiter {

Decision decide(const Theory& theory, const QueryContext& ctx) {
  Decision d;
  d.ground = ground_theory(theory, ctx);
  const GroundIndex index(d.ground, theory);
  const PriorityRelation prio = strict_priorities(index);
  d.result = acceptable_options(index);
  d.explanations = explain(d.result, index, prio);
  return d;
}

std::vector<AbductiveExplanation> abduce(const Theory& theory, const QueryContext& ctx, const std::string& target) {
  std::vector<AbductiveExplanation> out;
  for (const auto& s : decide_with_abduction(theory, ctx, target)) {
    const GroundIndex index(s.ground, theory);
    auto expl = explain(s.result, index);
    out.push_back(AbductiveExplanation{s.assumptions, expl.at(target).front()});
  }
  return out;
}

}  // namespace arbiter
