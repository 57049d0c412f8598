#include "doctest.h"
#include "oracle/oracle.hpp"
#include "support/fixtures.hpp"

#include "arbiter/diagnostics.hpp"

using namespace arbiter;
using namespace arbiter::testing;
using oracle::brute_force_acceptable;
using Options = std::set<std::string>;

namespace {

QueryContext facts(std::initializer_list<const char*> names) {
  QueryContext ctx;
  for (const char* n : names) ctx.facts.insert(n);
  return ctx;
}

oracle::OracleVerdict run(const Theory& t, const QueryContext& ctx) {
  return brute_force_acceptable(ground_theory(t, ctx), t);
}

}  // namespace

TEST_CASE("listing 1 verdicts for the four prose contexts") {
  const Theory t = salary_basic();
  CHECK(run(t, facts({kAbove})).acceptable_options == Options{"accept"});
  CHECK(run(t, facts({kLow})).acceptable_options == Options{"refuse"});
  CHECK(run(t, facts({kClose})).acceptable_options == Options{"refuse"});
  CHECK(run(t, facts({kClose, kPlan})).acceptable_options == Options{"accept"});
}

TEST_CASE("listing 1 priority conclusions") {
  const Theory t = salary_basic();
  const auto close = run(t, facts({kClose}));
  CHECK(close.acceptable_prefer_conclusions.at(1) == Options{"prefer(r3,r4)"});
  CHECK(close.acceptable_prefer_conclusions.at(2) == Options{"prefer(p2,p1)"});
  const auto plan = run(t, facts({kClose, kPlan}));
  CHECK(plan.acceptable_prefer_conclusions.at(1) == Options{"prefer(r4,r3)"});
}

TEST_CASE("listing 2 verdicts") {
  const Theory t = salary_advanced();
  CHECK(run(t, salary_ctx(100000, 80000)).acceptable_options == Options{"accept"});
  CHECK(run(t, salary_ctx(50000, 80000)).acceptable_options == Options{"refuse"});
  CHECK(run(t, salary_ctx(70000, 80000)).acceptable_options == Options{"refuse"});
  CHECK(run(t, salary_ctx(70000, 80000, "0.5")).acceptable_options == Options{"accept"});
  CHECK(run(t, salary_ctx(56000, 80000)).acceptable_options == Options{"refuse"});
  CHECK(run(t, salary_ctx(80000, 80000)).acceptable_options == Options{"accept"});
}

TEST_CASE("trivial programs") {
  const Theory empty;
  CHECK(brute_force_acceptable(GroundProgram{}, empty).acceptable_options.empty());

  const Theory single = parse_theory("rule(r1,go,[]):-ready.");
  CHECK(run(single, facts({"ready"})).acceptable_options == Options{"go"});
  CHECK(run(single, facts({})).acceptable_options.empty());
}

TEST_CASE("mutual attack keeps both options") {
  const Theory t = parse_theory("rule(r1,a,[]). rule(r2,b,[]). complement(a,b).");
  CHECK(run(t, facts({})).acceptable_options == Options{"a", "b"});
}

TEST_CASE("priority cycle at one level leaves both sides standing") {
  const Theory t = parse_theory(
      "rule(r1,a,[]). rule(r2,b,[]). rule(p1,prefer(r1,r2),[]). rule(p2,prefer(r2,r1),[]). complement(a,b).");
  CHECK(run(t, facts({})).acceptable_options == Options{"a", "b"});
}

TEST_CASE("a defeated sub-argument takes its conclusion down") {
  const Theory t = parse_theory(
      "rule(r1,b1,[]). rule(r2,b2,[]). rule(r3,go,[]):-b1. rule(p1,prefer(r2,r1),[]). complement(b1,b2).");
  CHECK(run(t, facts({})).acceptable_options == Options{"b2"});
}

TEST_CASE("above the cap") {
  std::string src;
  for (int i = 1; i <= 13; ++i) src += "rule(r" + std::to_string(i) + ",o,[]).\n";
  const Theory t = parse_theory(src);
  CHECK_THROWS_AS(run(t, facts({})), Error);
}
