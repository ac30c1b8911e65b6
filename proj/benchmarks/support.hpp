#pragma once

#include <random>
#include <utility>
#include <vector>

#include "walkscan/graph.hpp"
#include "walkscan/rng.hpp"

namespace walkscan::benchmarks {

/// Planted-community graph: `communities` cliques of `size` nodes each,
/// chained by single bridge edges so walks can leak between them.
inline Graph planted_cliques(std::size_t communities, std::size_t size) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t c = 0; c < communities; ++c) {
        std::size_t begin = c * size;
        for (std::size_t u = begin; u < begin + size; ++u)
            for (std::size_t v = u + 1; v < begin + size; ++v)
                edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        if (c > 0)
            edges.emplace_back(static_cast<NodeId>(begin - 1),
                               static_cast<NodeId>(begin));
    }
    return Graph::from_edges(communities * size, edges);
}

inline Graph random_graph(std::size_t n, std::size_t avg_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    const std::size_t target = n * avg_degree / 2;
    for (std::size_t i = 0; i < target; ++i) {
        NodeId u = static_cast<NodeId>(uniform_below(rng, n));
        NodeId v = static_cast<NodeId>(uniform_below(rng, n));
        if (u != v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

}  // namespace walkscan::benchmarks
