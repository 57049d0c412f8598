#include "doctest.h"
#include "support/fixtures.hpp"

#include "arbiter/diagnostics.hpp"

using namespace arbiter;
using namespace arbiter::testing;

namespace {

std::vector<std::string> ids(const GroundProgram& g, bool satisfied_only = true) {
  std::vector<std::string> out;
  for (const auto& r : g.rules) {
    if (!satisfied_only || r.satisfied) out.push_back(r.instance_id);
  }
  return out;
}

Numeric eval(const std::string& expr, const Binding& b = {}) {
  const auto conds = parse_conditions("x(A), " + expr + "=0");
  return evaluate(std::get<Comparison>(conds[1]).lhs, b);
}

using Ids = std::vector<std::string>;

}  // namespace

TEST_CASE("listing 2, offer above expectation") {
  const GroundProgram g = ground_theory(salary_advanced(), salary_ctx(100000, 80000));
  CHECK(ids(g) == Ids{"r1{E=80000,O=100000}", "p1", "c1"});
  CHECK(g.max_level == 2);
}

TEST_CASE("listing 2, close offer with an increase plan") {
  const GroundProgram g = ground_theory(salary_advanced(), salary_ctx(70000, 80000, "0.5"));
  CHECK(ids(g) == Ids{"r3{E=80000,O=70000}", "r4{E=80000,O=70000}", "p1", "p2{E=80000,O=70000,X=0.5}", "c1"});
  const GroundRule* p2 = g.find("p2{E=80000,O=70000,X=0.5}");
  REQUIRE(p2);
  CHECK(p2->facts_used.size() == 3);
  CHECK(render(p2->conditions.back()) == "70000*((1+0.5)**2)>1.5*80000");
}

TEST_CASE("listing 2 boundaries") {
  CHECK(ids(ground_theory(salary_advanced(), salary_ctx(56000, 80000))) == Ids{"r2{E=80000,O=56000}", "p1", "c1"});
  CHECK(ids(ground_theory(salary_advanced(), salary_ctx(80000, 80000))) == Ids{"r1{E=80000,O=80000}", "p1", "c1"});
  // 76800*(1.25**2) = 120000 = 1.5*80000: the plan condition is strict.
  const auto at = ground_theory(salary_advanced(), salary_ctx(76800, 80000, "0.25"));
  CHECK(ids(at) == Ids{"r3{E=80000,O=76800}", "r4{E=80000,O=76800}", "p1", "c1"});
  const auto above = ground_theory(salary_advanced(), salary_ctx(76801, 80000, "0.25"));
  CHECK(above.find("p2{E=80000,O=76801,X=0.25}") != nullptr);
}

TEST_CASE("empty context keeps only unconditional rules") {
  CHECK(ids(ground_theory(salary_basic(), QueryContext{})) == Ids{"p1", "c1"});
  CHECK(ids(ground_theory(salary_advanced(), QueryContext{})) == Ids{"p1", "c1"});
}

TEST_CASE("listing 1 propositional facts") {
  QueryContext ctx;
  ctx.facts = {kClose, kPlan};
  const GroundProgram g = ground_theory(salary_basic(), ctx);
  CHECK(ids(g) == Ids{"r3", "r4", "p1", "p2", "c1"});
  CHECK(g.find("r3")->facts_used == std::vector<DomainAtom>{DomainAtom{kClose, {}}});
}

TEST_CASE("comparisons") {
  const Decimal e(80000);
  const Decimal bound = *Decimal::parse("0.7") * e;
  CHECK(eval_builtin(CmpOp::Le, Decimal(56000), bound));
  CHECK_FALSE(eval_builtin(CmpOp::Gt, Decimal(56000), bound));
  CHECK(eval_builtin(CmpOp::Ge, Decimal(80000), Decimal(80000)));
  CHECK(eval_builtin(CmpOp::Eq, Decimal(3), Decimal(3)));
  CHECK(eval_builtin(CmpOp::Lt, Decimal(-1), Decimal(0)));
}

TEST_CASE("arithmetic evaluation") {
  Binding b{{"A", Term::num(70000)}};
  const Numeric exact = eval("A*((1+0.5)**2)", b);
  CHECK(exact.is_exact);
  CHECK(exact.exact == Decimal(157500));
  CHECK(eval("7/2").exact == *Decimal::parse("3.5"));
  CHECK(eval("2**(-1)").is_exact == false);
  const Numeric root = eval("2**0.5");
  CHECK_FALSE(root.is_exact);
  CHECK(eval_builtin(CmpOp::Eq, eval("(2**0.5)*(2**0.5)"), Numeric::of(Decimal(2))));
  CHECK_THROWS_AS(eval("1/0"), Error);
  CHECK_THROWS_AS(eval("A/(A-A)", b), Error);
}

TEST_CASE("division by zero surfaces from grounding") {
  const Theory t = parse_theory("rule(r1,go,[]):-x(A), A/(A-1)>0.");
  QueryContext ctx;
  ctx.bind("x", Decimal(1));
  try {
    ground_theory(t, ctx);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Code::ArithmeticError);
  }
}

TEST_CASE("multi-valued inputs produce the cross product") {
  const Theory t = parse_theory("rule(r1,go,[]):-x(A), y(B), A>B.");
  QueryContext ctx;
  ctx.bind("x", Decimal(1));
  ctx.bind("x", Decimal(5));
  ctx.bind("y", Decimal(2));
  ctx.bind("y", Decimal(0));
  CHECK(ids(ground_theory(t, ctx)) == Ids{"r1{A=1,B=0}", "r1{A=5,B=2}", "r1{A=5,B=0}"});
}

TEST_CASE("derived literals chain into other bodies") {
  const Theory t = parse_theory(
      "rule(r1,senior,[]):-age(A), A>=65. rule(r2,discount,[]):-senior, member. rule(r3,vip(A),[]):-age(A), senior.");
  QueryContext ctx;
  ctx.bind("age", Decimal(70));
  ctx.facts.insert("member");
  const GroundProgram g = ground_theory(t, ctx);
  CHECK(ids(g) == Ids{"r1{A=70}", "r2", "r3{A=70}"});
  CHECK(g.find("r2")->dependencies == std::vector<DomainAtom>{DomainAtom{"senior", {}}});
  CHECK(g.find("r2")->facts_used == std::vector<DomainAtom>{DomainAtom{"member", {}}});

  ctx.bindings["age"] = {Decimal(30)};
  CHECK(ids(ground_theory(t, ctx)).empty());
}

TEST_CASE("abducible premises stay open until assumed") {
  const Theory t = parse_theory("rule(r1,refuse,[budget_frozen]):-low. abducible(budget_frozen).");
  QueryContext ctx;
  ctx.facts.insert("low");
  GroundProgram g = ground_theory(t, ctx);
  REQUIRE(g.rules.size() == 1);
  CHECK_FALSE(g.rules[0].satisfied);
  CHECK(g.rules[0].open_assumptions == std::vector<DomainAtom>{DomainAtom{"budget_frozen", {}}});

  ctx.assume(DomainAtom{"budget_frozen", {}});
  g = ground_theory(t, ctx);
  CHECK(g.rules[0].satisfied);
  CHECK(g.rules[0].assumptions == std::vector<DomainAtom>{DomainAtom{"budget_frozen", {}}});
}

TEST_CASE("grounding is monotone in the context") {
  QueryContext small;
  small.facts = {kClose};
  QueryContext large = small;
  large.facts.insert(kPlan);
  large.facts.insert(kLow);
  const auto a = ids(ground_theory(salary_basic(), small));
  const auto b = ids(ground_theory(salary_basic(), large));
  for (const auto& id : a) CHECK(std::find(b.begin(), b.end(), id) != b.end());
}

TEST_CASE("matching") {
  Binding b;
  CHECK(match(parse_atom("grant(X,level(Y))"), parse_atom("grant(3,level(high))"), b));
  CHECK(b.at("X") == Term::num(3));
  CHECK(b.at("Y") == Term::atom("high"));
  Binding c;
  CHECK_FALSE(match(parse_atom("p(X,X)"), parse_atom("p(1,2)"), c));
}
