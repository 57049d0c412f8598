#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/random_theory.hpp"

#include "arbiter/diagnostics.hpp"

#include <cctype>

using namespace arbiter;
using namespace arbiter::testing;

namespace {

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

Code error_code(const std::string& src) {
  try {
    parse_theory(src);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse failure");
  return Code::IoError;
}

}  // namespace

TEST_CASE("listing 1 shape") {
  const Theory t = salary_basic();
  CHECK(t.rules.size() == 7);
  CHECK(t.complements.size() == 1);
  CHECK(t.abducibles.empty());
  CHECK(t.rules[1].label == "r2");
  CHECK(render(t.rules[1].head) == "refuse");
}

TEST_CASE("listing 2 shape") {
  const Theory t = salary_advanced();
  REQUIRE(t.rules.size() == 7);
  const auto& r1 = t.rules[0];
  REQUIRE(r1.conditions.size() == 3);
  CHECK(render(r1.conditions[0]) == "offered_salary(O)");
  CHECK(render(r1.conditions[1]) == "expected_salary(E)");
  CHECK(render(r1.conditions[2]) == "O>=E");
  CHECK(render(t.find("p2")->conditions.back()) == "O*((1+X)**2)>1.5*E");
}

TEST_CASE("empty source") {
  const Theory t = parse_theory("");
  CHECK(t.rules.empty());
  CHECK(t.complements.empty());
  CHECK(render_theory(t).empty());
}

TEST_CASE("rendering reproduces the listings token for token") {
  CHECK(strip_ws(render_theory(salary_basic())) == strip_ws(read_data("salary_basic.grg")));
  CHECK(strip_ws(render_theory(salary_advanced())) == strip_ws(read_data("salary_advanced.grg")));
}

TEST_CASE("complements fold and expand") {
  const Theory t = parse_theory("complement(a,b).");
  CHECK(t.complements.size() == 1);
  CHECK(render_theory(t) == "complement(a,b).\ncomplement(b,a).\n");
  CHECK(parse_theory("complement(a,b). complement(b,a).").complements.size() == 1);
}

TEST_CASE("levels follow the prefer structure") {
  const Theory t = salary_basic();
  CHECK(level_of(t, "r3") == 0);
  CHECK(level_of(t, "p2") == 1);
  CHECK(level_of(t, "c1") == 2);
}

TEST_CASE("errors") {
  CHECK(error_code("rule(p1,prefer(r9,r4),[]).") == Code::DanglingPreferTarget);
  CHECK(error_code("rule(r1,a,[]). rule(r1,b,[]).") == Code::DuplicateLabel);
  CHECK(error_code("rule(r1,a(X),[]).") == Code::RangeRestrictionViolation);
  CHECK(error_code("rule(r1,a,[]):-x(O), O<=3.") == Code::ParseError);
  CHECK(error_code("rule(r1,a,[]) b.") == Code::ParseError);
  CHECK(error_code("rule(r1,a,[]). rule(r2,b,[]). rule(p1,prefer(r1,r2),[]). rule(c1,prefer(p1,r1),[]).") ==
        Code::StratificationError);
}

TEST_CASE("parse errors carry a position and the expected tokens") {
  try {
    parse_theory("rule(r1,accept,[]).\nrule(r2,refuse [])");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.diagnostic().line == 2);
    CHECK(e.diagnostic().column > 0);
    CHECK_FALSE(e.diagnostic().expected.empty());
  }
}

TEST_CASE("comments and layout are ignored") {
  const Theory a = parse_theory("% header\nrule(r1,go,[]) :- ready, % trailing\n  set.\n");
  const Theory b = parse_theory("rule(r1,go,[]):-ready,set.");
  CHECK(a == b);
}

TEST_CASE("arithmetic precedence and rendering") {
  const auto conds = parse_conditions("x(A), A-(B-C)>A-B-C, y(B), z(C), A**(2**3)>(A**2)**3, A*(-2)=<2*A+1");
  CHECK(render(conds[1]) == "A-(B-C)>A-B-C");
  CHECK(render(conds[4]) == "A**(2**3)>(A**2)**3");
  const auto again = parse_conditions(render(conds[5]));
  CHECK(again[0] == conds[5]);
}

TEST_CASE("round trip on generated theories") {
  for (std::uint32_t seed = 1; seed <= 100; ++seed) {
    CAPTURE(seed);
    const Theory t = random_syntax_theory(seed);
    const std::string text = render_theory(t);
    const Theory back = parse_theory(text);
    CHECK(back == t);
    CHECK(render_theory(back) == text);
  }
}

TEST_CASE("abducible declarations") {
  const Theory t = parse_theory("rule(r1,refuse,[budget_frozen]). abducible(budget_frozen). abducible(budget_frozen).");
  CHECK(t.abducibles.size() == 1);
  CHECK(render_theory(t) == "rule(r1,refuse,[budget_frozen]).\nabducible(budget_frozen).\n");
}

TEST_CASE("theory options are terminal literals") {
  CHECK(theory_options(salary_basic()) == std::vector<std::string>{"accept", "refuse"});
  CHECK(derived_predicates(salary_advanced()) == std::set<std::string>{"accept", "refuse"});
}
