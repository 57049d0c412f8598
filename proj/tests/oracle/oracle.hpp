#pragma once

// Brute-force reference semantics for small ground programs. Shares only the
// rule-language and grounder data types with the engine; every definition
// (argument, conflict, priority, defeat, acceptance) is re-derived here by
// exhaustive enumeration over subsets of ground rules.

#include "arbiter/grounder.hpp"

#include <map>
#include <set>
#include <string>

namespace arbiter::oracle {

inline constexpr std::size_t kMaxGroundRules = 12;

struct OracleVerdict {
  std::set<std::string> acceptable_options;
  // level -> rendered prefer(a,b) conclusions of acceptable instances
  std::map<int, std::set<std::string>> acceptable_prefer_conclusions;

  bool operator==(const OracleVerdict&) const = default;
};

/// Throws arbiter::Error(TooLarge) above kMaxGroundRules.
OracleVerdict brute_force_acceptable(const GroundProgram& ground, const Theory& theory);

}  // namespace arbiter::oracle
