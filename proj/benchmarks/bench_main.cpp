#include <benchmark/benchmark.h>

#include "clnet/bounds.hpp"
#include "clnet/channel.hpp"
#include "clnet/search.hpp"
#include "clnet/topology.hpp"

using namespace clnet;

static void BM_CheckFoldedSingle(benchmark::State& st) {
  int k = static_cast<int>(st.range(0));
  LayeredNetwork net = gen_folded_single(k, (k + 1) / 2);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = construct_for_family(net, g);
  for (auto _ : st) benchmark::DoNotOptimize(check_coloring(g, a).valid);
}
BENCHMARK(BM_CheckFoldedSingle)->Arg(3)->Arg(5)->Arg(7);

static void BM_SearchMcl(benchmark::State& st) {
  LayeredNetwork net = gen_folded_two_layer(static_cast<int>(st.range(0)), 2);
  RouteExpandedGraph g = expand(net);
  for (auto _ : st) benchmark::DoNotOptimize(search_mcl(g, net.num_pairs()).num_colors);
}
BENCHMARK(BM_SearchMcl)->Arg(3)->Arg(4)->Arg(5);

static void BM_SearchMil(benchmark::State& st) {
  LayeredNetwork net = gen_nested(static_cast<int>(st.range(0)));
  RouteExpandedGraph g = expand(net);
  for (auto _ : st) benchmark::DoNotOptimize(search_mil(g).num_colors);
}
BENCHMARK(BM_SearchMil)->Arg(1)->Arg(2);

static void BM_Simulate(benchmark::State& st) {
  LayeredNetwork net = gen_folded_two_layer(3, 2);
  RouteExpandedGraph g = expand(net);
  ColorAssignment a = construct_for_family(net, g);
  int q = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(run_random_trials(net, g, a, q, 10, 7).passed);
}
BENCHMARK(BM_Simulate)->Arg(5)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
