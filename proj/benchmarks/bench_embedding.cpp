#include <benchmark/benchmark.h>

#include "support.hpp"
#include "walkscan/embedding.hpp"

namespace {

using namespace walkscan;

void BM_ComputeEmbedding(benchmark::State& state) {
    Graph g = benchmarks::random_graph(static_cast<std::size_t>(state.range(0)), 10, 1);
    NodeSet seeds({0, 1, 2});
    const int horizon = static_cast<int>(state.range(1));
    for (auto _ : state) {
        Embedding emb = compute_embedding(g, seeds, horizon);
        benchmark::DoNotOptimize(emb.coords.data());
    }
}
BENCHMARK(BM_ComputeEmbedding)
    ->Args({1000, 2})
    ->Args({1000, 3})
    ->Args({10000, 2})
    ->Args({10000, 3})
    ->Args({100000, 3});

void BM_WalkStep(benchmark::State& state) {
    Graph g = benchmarks::random_graph(static_cast<std::size_t>(state.range(0)), 10, 1);
    NodeSet seeds({0, 1, 2});
    WalkDistribution dist = uniform_seed_distribution(g, seeds);
    dist = walk_step(g, dist);  // widen the support first
    for (auto _ : state) {
        WalkDistribution next = walk_step(g, dist);
        benchmark::DoNotOptimize(next.mass.data());
    }
}
BENCHMARK(BM_WalkStep)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace
