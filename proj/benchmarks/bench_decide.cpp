#include "support/fixtures.hpp"
#include "support/random_theory.hpp"

#include "arbiter/decision.hpp"

#include <benchmark/benchmark.h>

using namespace arbiter;
using namespace arbiter::testing;

namespace {

void BM_ParseAdvanced(benchmark::State& state) {
  const std::string source = read_data("salary_advanced.grg");
  for (auto _ : state) benchmark::DoNotOptimize(parse_theory(source));
}
BENCHMARK(BM_ParseAdvanced);

void BM_GroundSalary(benchmark::State& state) {
  const Theory t = salary_advanced();
  const QueryContext ctx = salary_ctx(70000, 80000, "0.5");
  for (auto _ : state) benchmark::DoNotOptimize(ground_theory(t, ctx));
}
BENCHMARK(BM_GroundSalary);

void BM_DecideSalary(benchmark::State& state) {
  const Theory t = salary_advanced();
  const QueryContext ctx = salary_ctx(70000, 80000, "0.5");
  for (auto _ : state) benchmark::DoNotOptimize(decide(t, ctx));
}
BENCHMARK(BM_DecideSalary);

// args: options, decision rules, preference rules, meta rules
void BM_GroundScale(benchmark::State& state) {
  const auto inst = scale_instance(state.range(0), state.range(1), state.range(2), state.range(3));
  for (auto _ : state) benchmark::DoNotOptimize(ground_theory(inst.theory, inst.context));
}
BENCHMARK(BM_GroundScale)->Args({10, 100, 30, 4})->Args({50, 500, 150, 20})->Unit(benchmark::kMillisecond);

void BM_DecideScale(benchmark::State& state) {
  const auto inst = scale_instance(state.range(0), state.range(1), state.range(2), state.range(3));
  for (auto _ : state) benchmark::DoNotOptimize(decide(inst.theory, inst.context));
}
BENCHMARK(BM_DecideScale)->Args({10, 100, 30, 4})->Args({50, 500, 150, 20})->Unit(benchmark::kMillisecond);

void BM_Abduce(benchmark::State& state) {
  const Theory t = parse_theory(
      "rule(r1,accept,[]):-good_offer.\n"
      "rule(r2,refuse,[budget_frozen]).\n"
      "rule(r3,refuse,[hiring_paused,reorg]).\n"
      "rule(r4,accept,[reorg]):-good_offer.\n"
      "rule(p1,prefer(r2,r1),[]).\n"
      "rule(p2,prefer(r4,r3),[]).\n"
      "complement(accept,refuse).\n"
      "abducible(budget_frozen). abducible(hiring_paused). abducible(reorg).\n");
  QueryContext ctx;
  ctx.facts.insert("good_offer");
  for (auto _ : state) benchmark::DoNotOptimize(abduce(t, ctx, "refuse"));
}
BENCHMARK(BM_Abduce);

}  // namespace

BENCHMARK_MAIN();
