#include <benchmark/benchmark.h>

#include <random>

#include "support.hpp"
#include "walkscan/walkscan.hpp"

namespace {

using namespace walkscan;

Embedding random_points(std::size_t n, int horizon, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Embedding emb;
    emb.horizon = horizon;
    for (std::size_t i = 0; i < n; ++i) {
        emb.nodes.push_back(static_cast<NodeId>(i));
        for (int t = 0; t < horizon; ++t)
            emb.coords.push_back(
                static_cast<double>(uniform_below(rng, 1u << 20)) / (1u << 20));
    }
    return emb;
}

void BM_ClusterPoints(benchmark::State& state) {
    Embedding emb = random_points(static_cast<std::size_t>(state.range(0)), 2, 5);
    const double d = static_cast<double>(state.range(1)) / 1000.0;
    for (auto _ : state) {
        ClusterResult r = cluster_points(emb, d);
        benchmark::DoNotOptimize(r.cores.data());
    }
}
BENCHMARK(BM_ClusterPoints)
    ->Args({1000, 10})
    ->Args({10000, 10})
    ->Args({100000, 10})
    ->Args({10000, 300});

void BM_DetectCommunities(benchmark::State& state) {
    Graph g = benchmarks::planted_cliques(static_cast<std::size_t>(state.range(0)), 30);
    NodeSet seeds({0, 1, 2});
    WalkscanParams params;
    params.distance = 0.05;
    for (auto _ : state) {
        CommunityList comms = detect_communities(g, seeds, params);
        benchmark::DoNotOptimize(comms.data());
    }
}
BENCHMARK(BM_DetectCommunities)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
