#pragma once

#include "arbiter/grounder.hpp"
#include "arbiter/rule_lang.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace arbiter::testing {

inline std::string data_path(const std::string& name) { return std::string(ARBITER_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Theory salary_basic() { return parse_theory(read_data("salary_basic.grg")); }
inline Theory salary_advanced() { return parse_theory(read_data("salary_advanced.grg")); }

inline QueryContext salary_ctx(long long offered, long long expected) {
  QueryContext ctx;
  ctx.bind("offered_salary", Decimal(offered));
  ctx.bind("expected_salary", Decimal(expected));
  return ctx;
}

inline QueryContext salary_ctx(long long offered, long long expected, const char* increase) {
  QueryContext ctx = salary_ctx(offered, expected);
  ctx.bind("yearly_salary_increase", *Decimal::parse(increase));
  return ctx;
}

/// True when some bijection between rule labels maps `a` onto `b`: same rules
/// (in any order), same complements, same abducibles.
inline bool equivalent_modulo_labels(const Theory& a, const Theory& b) {
  if (a.rules.size() != b.rules.size() || a.complements.size() != b.complements.size() ||
      a.abducibles.size() != b.abducibles.size()) {
    return false;
  }
  for (const auto& c : a.complements) {
    if (std::find(b.complements.begin(), b.complements.end(), c) == b.complements.end()) return false;
  }
  for (const auto& x : a.abducibles) {
    if (std::find(b.abducibles.begin(), b.abducibles.end(), x) == b.abducibles.end()) return false;
  }
  // Labels are fixed level by level: a rule maps to an unused rule of b whose
  // head, premises and conditions agree once already-mapped labels are renamed.
  std::map<std::string, std::string> to_b;
  std::set<std::string> used;
  const auto levels_a = rule_levels(a);
  const auto levels_b = rule_levels(b);
  int top = 0;
  for (const auto& [l, k] : levels_a) top = std::max(top, k);
  for (int k = 0; k <= top; ++k) {
    for (const auto& ra : a.rules) {
      if (levels_a.at(ra.label) != k) continue;
      RuleClause renamed = ra;
      if (auto* p = std::get_if<Preference>(&renamed.head)) {
        p->stronger = to_b.at(p->stronger);
        p->weaker = to_b.at(p->weaker);
      }
      bool found = false;
      for (const auto& rb : b.rules) {
        if (used.count(rb.label) || levels_b.at(rb.label) != k) continue;
        renamed.label = rb.label;
        if (renamed == rb) {
          to_b[ra.label] = rb.label;
          used.insert(rb.label);
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

inline const char* const kAbove = "the_salary_offered_is_above_the_expected_salary";
inline const char* const kLow = "the_offered_salary_is_low";
inline const char* const kClose = "the_offered_salary_is_close_to_the_expected_salary";
inline const char* const kPlan =
    "the_yearly_salary_increase_plan_brings_within_two_years_the_salary_well_above_the_expected_salary";

}  // namespace arbiter::testing
