// Serial reference kernels against their OpenMP counterparts on growth snapshots.
#include <benchmark/benchmark.h>

#include <map>

#include "npp/census.hpp"
#include "npp/centrality.hpp"
#include "npp/synth.hpp"

namespace {

const npp::GraphSnapshot& snapshot(std::size_t nodes) {
  static std::map<std::size_t, npp::GraphSnapshot> cache;
  auto it = cache.find(nodes);
  if (it == cache.end()) {
    npp::GrowthParams p;
    p.nodes = nodes;
    const auto g = npp::generate_growth(p);
    it = cache.emplace(nodes, npp::snapshot_at(g, *g.latest_event())).first;
  }
  return it->second;
}

void set_counters(benchmark::State& state, const npp::GraphSnapshot& s) {
  state.counters["nodes"] = static_cast<double>(s.n());
  state.counters["edges"] = static_cast<double>(s.m());
}

void BM_CensusSerial(benchmark::State& state) {
  const auto& s = snapshot(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(npp::serial::npp_census(s));
  set_counters(state, s);
}

void BM_CensusParallel(benchmark::State& state) {
  const auto& s = snapshot(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(npp::npp_census(s));
  set_counters(state, s);
}

void BM_TrianglesSerial(benchmark::State& state) {
  const auto& s = snapshot(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(npp::serial::triangles_per_node(s));
  set_counters(state, s);
}

void BM_TrianglesParallel(benchmark::State& state) {
  const auto& s = snapshot(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(npp::triangles_per_node(s));
  set_counters(state, s);
}

void BM_BetweennessSerial(benchmark::State& state) {
  const auto& s = snapshot(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(npp::serial::betweenness(s));
  set_counters(state, s);
}

void BM_BetweennessParallel(benchmark::State& state) {
  const auto& s = snapshot(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(npp::betweenness(s));
  set_counters(state, s);
}

}  // namespace

BENCHMARK(BM_CensusSerial)->Arg(3000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)->Arg(3000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrianglesSerial)->Arg(3000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrianglesParallel)->Arg(3000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BetweennessSerial)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BetweennessParallel)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
