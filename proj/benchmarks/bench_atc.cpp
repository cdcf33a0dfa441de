#include <benchmark/benchmark.h>

#include <map>

#include "atc/at_index.hpp"
#include "atc/errors.hpp"
#include "atc/eval.hpp"
#include "atc/greedy.hpp"
#include "atc/local_search.hpp"
#include "atc/truss.hpp"

namespace {

struct Fixture {
  atc::Graph graph;
  atc::GroundTruth truth;
  std::vector<atc::GeneratedQuery> queries;
};

// Cached per size so graph generation stays out of the timed loops.
const Fixture& fixture(std::size_t n) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  atc::GeneratorConfig cfg;
  cfg.n = n;
  cfg.communities = n / 50;
  cfg.overlap = true;
  cfg.min_size = 20;
  cfg.max_size = 40;
  cfg.seed = 3;
  auto pg = atc::generate_planted_graph(cfg);
  atc::PlantConfig pc;
  pc.seed = 4;
  Fixture f;
  f.graph = atc::plant_attributes(pg.graph, pg.truth, pc);
  f.truth = pg.truth;
  f.queries = atc::gen_queries(f.graph, f.truth, 8, 1, 3, 2, 5);
  return cache.emplace(n, std::move(f)).first->second;
}

void BM_TrussDecompose(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(atc::truss_decompose(f.graph));
  state.counters["edges"] = static_cast<double>(f.graph.num_edges());
}
BENCHMARK(BM_TrussDecompose)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_IndexBuild(benchmark::State& state) {
  const auto& f = fixture(4000);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(atc::ATIndex::build(f.graph, threads));
}
BENCHMARK(BM_IndexBuild)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

template <class Search>
void run_queries(benchmark::State& state, Search search) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    for (const auto& gq : f.queries) {
      try {
        benchmark::DoNotOptimize(search(f.graph, gq.query));
      } catch (const atc::NoFeasibleCommunity&) {
      }
    }
}

void BM_Basic(benchmark::State& state) {
  run_queries(state, [](const atc::Graph& g, const atc::QuerySpec& q) { return atc::basic_search(g, q).result; });
}
BENCHMARK(BM_Basic)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Bulk(benchmark::State& state) {
  run_queries(state, [](const atc::Graph& g, const atc::QuerySpec& q) { return atc::bulk_search(g, q).result; });
}
BENCHMARK(BM_Bulk)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Local(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const atc::ATIndex idx = atc::ATIndex::build(f.graph);
  run_queries(state, [&](const atc::Graph& g, const atc::QuerySpec& q) { return atc::locatc_search(g, idx, q); });
}
BENCHMARK(BM_Local)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
