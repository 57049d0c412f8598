#pragma once

#include "arbiter/grounder.hpp"

#include <cstdint>
#include <random>

namespace arbiter::testing {

struct RandomInstance {
  Theory theory;
  QueryContext context;
};

/// Small propositional theory with at most `max_rules` rules (so at most that
/// many ground rules), priorities up to level 2 and up to three options.
RandomInstance random_small_instance(std::uint32_t seed, std::size_t max_rules = 8);

/// First-order theory exercising every syntactic form of the rule language:
/// numeric inputs, variables, nested arithmetic, compounds, premises,
/// complements and abducibles. Valid by construction.
Theory random_syntax_theory(std::uint32_t seed);

/// Synthetic theory of the given size for scale runs, plus a context that
/// fires roughly a third of the decision rules.
RandomInstance scale_instance(std::size_t options, std::size_t decision_rules, std::size_t preference_rules,
                              std::size_t meta_rules, std::uint32_t seed = 7);

}  // namespace arbiter::testing
