#include <benchmark/benchmark.h>

#include "support.hpp"
#include "walkscan/ranking.hpp"

namespace {

using namespace walkscan;

void BM_PageRankScores(benchmark::State& state) {
    Graph g = benchmarks::random_graph(static_cast<std::size_t>(state.range(0)), 10, 2);
    NodeSet seeds({0, 1, 2});
    PageRankParams params;
    for (auto _ : state) {
        ScoreTable scores = pagerank_scores(g, seeds, params);
        benchmark::DoNotOptimize(scores.entries.data());
    }
}
BENCHMARK(BM_PageRankScores)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Sweep(benchmark::State& state) {
    Graph g = benchmarks::random_graph(static_cast<std::size_t>(state.range(0)), 10, 3);
    NodeSet seeds({0, 1, 2});
    ScoreTable scores = pagerank_scores(g, seeds, {});
    RankedList ranked = rank_by_score(scores);
    for (auto _ : state) {
        NodeSet out = sweep(g, seeds, ranked);
        benchmark::DoNotOptimize(out.size());
    }
}
BENCHMARK(BM_Sweep)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_PageRankCommunity(benchmark::State& state) {
    Graph g = benchmarks::planted_cliques(static_cast<std::size_t>(state.range(0)), 30);
    NodeSet seeds({0, 1, 2});
    for (auto _ : state) {
        NodeSet out = pagerank_community(g, seeds, {});
        benchmark::DoNotOptimize(out.size());
    }
}
BENCHMARK(BM_PageRankCommunity)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
