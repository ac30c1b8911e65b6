#pragma once

#include <span>
#include <vector>

#include "walkscan/graph.hpp"

namespace walkscan {

using EmbeddingVector = std::vector<double>;

/// Sparse probability distribution of the walk at a fixed time. Entries are
/// sorted by node id and strictly positive; total mass stays 1.
struct WalkDistribution {
    int time = 0;
    std::vector<std::pair<NodeId, double>> mass;

    double at(NodeId v) const;
};

/// Uniform start p_0 = 1_S / |S|. Every seed must have degree >= 1.
WalkDistribution uniform_seed_distribution(const Graph& g, const NodeSet& seeds);

/// One transition: each node forwards its mass to its neighbors in equal
/// shares. Mass is conserved; the support only grows along edges.
WalkDistribution walk_step(const Graph& g, const WalkDistribution& dist);

/// Node embedding v -> (p_1(v), ..., p_T(v)). Nodes never reached within T
/// steps are absent; zero is represented by absence, so every stored node
/// has at least one nonzero coordinate.
struct Embedding {
    int horizon = 0;
    NodeSet seeds;
    std::vector<NodeId> nodes;   // sorted ascending
    std::vector<double> coords;  // nodes.size() x horizon, row-major

    std::size_t size() const { return nodes.size(); }
    std::span<const double> row(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(horizon),
                static_cast<std::size_t>(horizon)};
    }
    /// Index of v among the stored nodes, or npos when absent.
    std::size_t index_of(NodeId v) const;
    /// Coordinates of v; empty span when v was never reached.
    std::span<const double> vector_of(NodeId v) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Embeds the graph by iterating walk_step from the seed distribution for
/// `horizon` steps. Requires a non-empty seed set of degree >= 1 nodes and
/// horizon >= 1.
Embedding compute_embedding(const Graph& g, const NodeSet& seeds, int horizon);

}  // namespace walkscan
