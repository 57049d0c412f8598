#pragma once

#include "arbiter/explainer.hpp"

#include <string>
#include <vector>

namespace arbiter {

/// Ground, decide and explain in one call.
struct Decision {
  GroundProgram ground;
  DecisionResult result;
  Explanations explanations;
};

Decision decide(const Theory& theory, const QueryContext& ctx);

struct AbductiveExplanation {
  std::vector<DomainAtom> assumptions;
  Explanation explanation;
};

/// decide_with_abduction, with the first explanation of the target under each
/// minimal assumption set.
std::vector<AbductiveExplanation> abduce(const Theory& theory, const QueryContext& ctx, const std::string& target);

}  // namespace arbiter
