#pragma once

#include "arbiter/grounder.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arbiter {

/// A minimal, consistent, well-founded derivation of `conclusion` from ground
/// rules. `derivation` holds instance ids with the top rule first and the
/// remaining rules sorted.
struct Argument {
  Literal conclusion;
  std::string top;
  std::vector<std::string> derivation;
  std::vector<std::string> support_priorities;  // prefer-instances backing its wins
  std::vector<DomainAtom> assumptions;
  int level = 0;

  bool operator==(const Argument&) const = default;
};

/// Strict priorities per level. `strict[k]` holds (stronger, weaker) schema
/// label pairs between level k-1 rules; a pair applies to every instance pair
/// of the two schemas.
struct PriorityRelation {
  std::map<int, std::set<std::pair<std::string, std::string>>> strict;
  std::map<int, std::vector<std::string>> acceptable;  // prefer-instance ids per level

  bool stronger(int level, const std::string& a_schema, const std::string& b_schema) const;
};

struct DecisionResult {
  std::vector<std::string> acceptable_options;  // in option order
  std::map<std::string, std::vector<Argument>> per_option;  // acceptable arguments
  bool ambiguous = false;
  std::vector<DomainAtom> assumptions_used;
};

/// Index over a ground program shared by the engine operations.
class GroundIndex {
 public:
  GroundIndex(const GroundProgram& program, const Theory& theory);

  const GroundProgram& program() const { return program_; }
  const Theory& theory() const { return theory_; }
  const GroundRule& rule(const std::string& instance_id) const;
  const GroundRule* find(const std::string& instance_id) const;
  const std::vector<std::size_t>& supporters(const std::string& atom_key) const;

  bool complementary(const DomainAtom& a, const DomainAtom& b) const;
  bool conflicting(const Literal& a, const Literal& b) const;
  /// Ground conclusions that count as options: terminal literals of the theory.
  bool is_option(const DomainAtom& atom) const;
  std::string option_id(const DomainAtom& atom) const;

 private:
  const GroundProgram& program_;
  const Theory& theory_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::vector<std::size_t>> supporters_;
  std::set<std::string> body_predicates_;
  std::vector<DomainAtom> option_schemas_;
};

/// Upper bound on arguments enumerated per query before TooLarge is raised.
inline constexpr std::size_t kMaxArguments = 200000;

std::vector<Argument> build_arguments(const GroundIndex& index);
std::vector<Argument> build_arguments(const GroundProgram& ground, const Theory& theory);

bool conflicts(const Argument& a, const Argument& b, const Theory& theory);

PriorityRelation strict_priorities(const GroundIndex& index);
PriorityRelation strict_priorities(const GroundProgram& ground, const Theory& theory);

DecisionResult acceptable_options(const GroundIndex& index);
DecisionResult acceptable_options(const GroundProgram& ground, const Theory& theory);

/// Priority instances showing why the level-k rule `stronger` beats `weaker`:
/// the acceptable prefer-instance, then for every opposing instance the
/// higher-level chain that defeats it. Empty if the pair is not strict.
std::vector<std::string> priority_chain(const GroundIndex& index, const PriorityRelation& prio,
                                        const GroundRule& stronger, const GroundRule& weaker);

struct AbductiveSolution {
  std::vector<DomainAtom> assumptions;
  QueryContext context;  // input context plus the assumptions
  GroundProgram ground;
  DecisionResult result;
};

/// Upper bound on the ground abducible vocabulary searched exhaustively.
inline constexpr std::size_t kMaxAbducibles = 16;

/// Subset-minimal sets of ground abducibles that make `target` acceptable.
/// Throws UnknownOption, TooLarge.
std::vector<AbductiveSolution> decide_with_abduction(const Theory& theory, const QueryContext& ctx,
                                                     const std::string& target);

/// Ground abducibles the search may assume for `ctx`.
std::vector<DomainAtom> abducible_vocabulary(const Theory& theory, const QueryContext& ctx);

}  // namespace arbiter
