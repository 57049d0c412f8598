#include "doctest.h"
#include "support/fixtures.hpp"

#include "arbiter/diagnostics.hpp"
#include "arbiter/policy.hpp"

using namespace arbiter;
using namespace arbiter::testing;

namespace {

Code policy_error(const std::string& src) {
  try {
    parse_policy(src);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a policy error");
  return Code::IoError;
}

const char* const kHeader = "POLICY p\nOPTIONS\n  yes\n  no\nSCENARIOS\n  s: Something holds\n";

}  // namespace

TEST_CASE("salary policy counts") {
  const PolicyDocument doc = parse_policy(read_data("salary.sbp"));
  CHECK(doc.name == "salary_negotiation");
  CHECK(doc.options == std::vector<std::string>{"accept", "refuse"});
  CHECK(doc.scenarios.size() == 4);
  CHECK(doc.statements.size() == 4);
  CHECK(doc.preferences.size() == 3);
  CHECK(doc.level("plan_accept") == 1);
  CHECK(doc.level("plan_wins") == 2);
}

TEST_CASE("compiled salary policy matches the listings") {
  const PolicyDocument doc = parse_policy(read_data("salary.sbp"));
  const Theory basic = compile_policy(doc, CompileMode::Basic);
  const Theory advanced = compile_policy(doc, CompileMode::Advanced);
  CHECK(equivalent_modulo_labels(basic, salary_basic()));
  CHECK(equivalent_modulo_labels(advanced, salary_advanced()));
  CHECK(render_theory(basic) == render_theory(salary_basic()));
  CHECK(render_theory(advanced) == render_theory(salary_advanced()));
}

TEST_CASE("compilation is deterministic") {
  const PolicyDocument doc = parse_policy(read_data("salary.sbp"));
  CHECK(render_theory(compile_policy(doc, CompileMode::Advanced)) ==
        render_theory(compile_policy(parse_policy(read_data("salary.sbp")), CompileMode::Advanced)));
}

TEST_CASE("propositionalize") {
  CHECK(propositionalize("The offered salary is low") == "the_offered_salary_is_low");
  CHECK(propositionalize("  Costs > 3,000 -- really!  ") == "costs_3_000_really");
}

TEST_CASE("relabelled policy still matches") {
  const std::string src =
      "POLICY shuffled\nOPTIONS\n  refuse\n  accept\nSCENARIOS\n"
      "  close: The offered salary is close to the expected salary\n"
      "  low: The offered salary is low\n"
      "  above: The salary offered is above the expected salary\n"
      "  plan: The yearly salary increase plan brings within two years the salary well above the expected salary\n"
      "STATEMENTS\n  b: close => accept\n  a: close => refuse\n  l: low => refuse\n  h: above => accept\n"
      "PREFERENCES\n  x: b > a when plan\n  y: a > b\n  z: x > y\n";
  const Theory t = compile_policy(parse_policy(src), CompileMode::Basic);
  CHECK(equivalent_modulo_labels(t, salary_basic()));
  CHECK_FALSE(render_theory(t) == render_theory(salary_basic()));
}

TEST_CASE("two options and no statements") {
  const Theory t = compile_policy(parse_policy("POLICY p\nOPTIONS\n  yes\n  no\n"), CompileMode::Basic);
  CHECK(t.rules.empty());
  CHECK(t.complements.size() == 1);
  CHECK(metadata_of(t).options == std::vector<std::string>{"yes", "no"});
}

TEST_CASE("pairwise complements for three options") {
  const Theory t = compile_policy(parse_policy("POLICY p\nOPTIONS\n  a\n  b\n  c\n"), CompileMode::Basic);
  CHECK(t.complements.size() == 3);
}

TEST_CASE("policy errors") {
  CHECK(policy_error("POLICY p\nOPTIONS\n  only\n") == Code::ParseError);
  CHECK(policy_error(std::string(kHeader) + "STATEMENTS\n  a: missing => yes\n") == Code::UnknownReference);
  CHECK(policy_error(std::string(kHeader) + "STATEMENTS\n  a: s => maybe\n") == Code::UnknownReference);
  CHECK(policy_error(std::string(kHeader) + "STATEMENTS\n  a: s => yes\n  b: s => no\n"
                                            "PREFERENCES\n  p: a > b\n  q: p > a\n") == Code::LevelMismatch);
  CHECK(policy_error(std::string(kHeader) + "STATEMENTS\n  a: s => yes\nPREFERENCES\n  p: a > a\n") ==
        Code::LevelMismatch);
}

TEST_CASE("advanced mode needs conditions") {
  const PolicyDocument doc = parse_policy(std::string(kHeader) + "STATEMENTS\n  a: s => yes\n");
  CHECK_NOTHROW(compile_policy(doc, CompileMode::Basic));
  try {
    compile_policy(doc, CompileMode::Advanced);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Code::MissingAdvancedCondition);
  }
  const PolicyDocument marked = parse_policy(
      "POLICY p\nOPTIONS\n  yes\n  no\nSCENARIOS\n  s: Something holds\n    mode: propositional\n"
      "STATEMENTS\n  a: s => yes\n");
  const Theory t = compile_policy(marked, CompileMode::Advanced);
  CHECK(render(t.rules[0]) == "rule(r1,yes,[]):-something_holds.");
}

TEST_CASE("metadata") {
  const auto basic = metadata_of(salary_basic());
  CHECK(basic.options == std::vector<std::string>{"accept", "refuse"});
  REQUIRE(basic.scenario_elements.size() == 4);
  for (const auto& e : basic.scenario_elements) CHECK(e.kind == ScenarioElement::Kind::Propositional);
  CHECK(basic.scenario_elements[1].id == kLow);

  const auto adv = metadata_of(salary_advanced());
  CHECK(adv.options == std::vector<std::string>{"accept", "refuse"});
  const std::vector<ScenarioElement> expected{{"offered_salary", ScenarioElement::Kind::Numeric},
                                              {"expected_salary", ScenarioElement::Kind::Numeric},
                                              {"yearly_salary_increase", ScenarioElement::Kind::Numeric}};
  CHECK(adv.scenario_elements == expected);

  CHECK(metadata_of(Theory{}) == ApplicationMetadata{});
}
