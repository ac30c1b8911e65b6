#include "walkscan/embedding.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace walkscan {

double WalkDistribution::at(NodeId v) const {
    auto it = std::lower_bound(mass.begin(), mass.end(), v,
                               [](const auto& e, NodeId n) { return e.first < n; });
    if (it == mass.end() || it->first != v) return 0.0;
    return it->second;
}

WalkDistribution uniform_seed_distribution(const Graph& g, const NodeSet& seeds) {
    if (seeds.empty())
        throw std::invalid_argument("walk requires a non-empty seed set");
    WalkDistribution dist;
    dist.time = 0;
    dist.mass.reserve(seeds.size());
    const double share = 1.0 / static_cast<double>(seeds.size());
    for (NodeId s : seeds) {
        if (s >= g.node_count())
            throw std::invalid_argument("seed id out of range");
        if (g.degree(s) == 0)
            throw std::invalid_argument("seed node has degree 0");
        dist.mass.emplace_back(s, share);
    }
    return dist;
}

WalkDistribution walk_step(const Graph& g, const WalkDistribution& dist) {
    std::unordered_map<NodeId, double> next;
    next.reserve(dist.mass.size() * 4);
    for (const auto& [u, p] : dist.mass) {
        const std::size_t d = g.degree(u);
        if (d == 0)
            throw std::invalid_argument("walk reached a degree-0 node");
        const double share = p / static_cast<double>(d);
        for (NodeId v : g.neighbors(u)) next[v] += share;
    }
    WalkDistribution out;
    out.time = dist.time + 1;
    out.mass.assign(next.begin(), next.end());
    std::sort(out.mass.begin(), out.mass.end());
    return out;
}

std::size_t Embedding::index_of(NodeId v) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v) return npos;
    return static_cast<std::size_t>(it - nodes.begin());
}

std::span<const double> Embedding::vector_of(NodeId v) const {
    std::size_t i = index_of(v);
    if (i == npos) return {};
    return row(i);
}

Embedding compute_embedding(const Graph& g, const NodeSet& seeds, int horizon) {
    if (horizon < 1)
        throw std::invalid_argument("embedding horizon must be >= 1");

    std::vector<WalkDistribution> steps;
    steps.reserve(static_cast<std::size_t>(horizon));
    WalkDistribution dist = uniform_seed_distribution(g, seeds);
    for (int t = 0; t < horizon; ++t) {
        dist = walk_step(g, dist);
        steps.push_back(dist);
    }

    // Support = union of the per-step supports (all entries are nonzero).
    std::vector<NodeId> support;
    for (const auto& step : steps)
        for (const auto& [v, p] : step.mass) support.push_back(v);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    Embedding emb;
    emb.horizon = horizon;
    emb.seeds = seeds;
    emb.nodes = std::move(support);
    emb.coords.assign(emb.nodes.size() * static_cast<std::size_t>(horizon), 0.0);
    for (int t = 0; t < horizon; ++t) {
        for (const auto& [v, p] : steps[static_cast<std::size_t>(t)].mass) {
            std::size_t i = emb.index_of(v);
            emb.coords[i * static_cast<std::size_t>(horizon) + static_cast<std::size_t>(t)] = p;
        }
    }
    return emb;
}

}  // namespace walkscan
