#include <benchmark/benchmark.h>

#include "irvm/distance.hpp"
#include "irvm/parliament.hpp"
#include "irvm/search.hpp"
#include "irvm/synthetic.hpp"

namespace {

using namespace irvm;

void BM_Tabulate(benchmark::State& state) {
  const auto p = generate_profile({static_cast<int>(state.range(0)), 50000, 1});
  for (auto _ : state) benchmark::DoNotOptimize(run_election(p, TieRule::Lexicographic));
}
BENCHMARK(BM_Tabulate)->Arg(4)->Arg(8)->Arg(12);

void BM_RootBound(benchmark::State& state) {
  const auto p = generate_profile({8, 50000, 1});
  const auto count = run_election(p, TieRule::Lexicographic);
  const auto& order = count.elimination_order;
  const auto len = static_cast<std::ptrdiff_t>(state.range(0));
  const EliminationSequence suffix({order.end() - len, order.end()}, 8);
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound(p, suffix));
}
BENCHMARK(BM_RootBound)->DenseRange(2, 8, 2);

void BM_ComputeMov(benchmark::State& state) {
  const auto p = generate_profile({static_cast<int>(state.range(0)), state.range(1), 7});
  const SearchOptions options{TieRule::Lexicographic};
  for (auto _ : state) {
    const auto r = compute_mov(p, options);
    state.counters["nodes"] = static_cast<double>(r.stats.nodes_expanded);
    state.counters["lps"] = static_cast<double>(r.stats.lps_solved);
  }
}
BENCHMARK(BM_ComputeMov)->Args({5, 10000})->Args({6, 20000})->Args({8, 50000})->Unit(benchmark::kMillisecond);

void BM_ArithmeticMode(benchmark::State& state) {
  const auto p = generate_profile({6, 20000, 3});
  const SearchOptions options{TieRule::Lexicographic, static_cast<lp::Arithmetic>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(compute_mov(p, options));
}
BENCHMARK(BM_ArithmeticMode)
    ->Arg(static_cast<int>(lp::Arithmetic::Exact))
    ->Arg(static_cast<int>(lp::Arithmetic::Certified))
    ->Arg(static_cast<int>(lp::Arithmetic::Float))
    ->Unit(benchmark::kMillisecond);

void BM_ParliamentWin(benchmark::State& state) {
  std::vector<SeatRecord> records;
  for (int i = 0; i < state.range(0); ++i) {
    SeatRecord r;
    r.seat = "seat" + std::to_string(i);
    r.winner_party = i % 3 == 0 ? "ALP" : "LIB";
    r.mov = r.lrm = 100 + (i * 7919) % 10000;
    r.movc_by_target["movc:ALP"] = r.mov + i % 13;
    records.push_back(std::move(r));
  }
  const auto t = threshold(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seats_to_win(records, Coalition::parse("ALP"), t));
}
BENCHMARK(BM_ParliamentWin)->Arg(93)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
