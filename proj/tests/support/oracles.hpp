#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is dense, brute-force and kept deliberately separate from
// the code paths under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "walkscan/embedding.hpp"
#include "walkscan/graph.hpp"
#include "walkscan/metrics.hpp"

namespace walkscan::testing {

/// Dense walk distributions p_1..p_T via repeated matrix-vector products.
inline std::vector<std::vector<double>> dense_walk(const Graph& g,
                                                   const NodeSet& seeds, int horizon) {
    const std::size_t n = g.node_count();
    std::vector<double> p(n, 0.0);
    for (NodeId s : seeds) p[s] = 1.0 / static_cast<double>(seeds.size());

    std::vector<std::vector<double>> out;
    for (int t = 0; t < horizon; ++t) {
        std::vector<double> q(n, 0.0);
        for (NodeId u = 0; u < n; ++u) {
            if (p[u] == 0.0) continue;
            double share = p[u] / static_cast<double>(g.degree(u));
            for (NodeId v : g.neighbors(u)) q[v] += share;
        }
        p = q;
        out.push_back(p);
    }
    return out;
}

/// Dense damped recursion r_{t+1} = (1-alpha) r_0 + alpha P r_t.
inline std::vector<double> dense_pagerank(const Graph& g, const NodeSet& seeds,
                                          double alpha, int horizon) {
    const std::size_t n = g.node_count();
    std::vector<double> r0(n, 0.0);
    for (NodeId s : seeds) r0[s] = 1.0 / static_cast<double>(seeds.size());
    std::vector<double> r = r0;
    for (int t = 0; t < horizon; ++t) {
        std::vector<double> next(n, 0.0);
        for (NodeId v = 0; v < n; ++v) next[v] = (1.0 - alpha) * r0[v];
        for (NodeId u = 0; u < n; ++u) {
            if (r[u] == 0.0) continue;
            double share = alpha * r[u] / static_cast<double>(g.degree(u));
            for (NodeId v : g.neighbors(u)) next[v] += share;
        }
        r = next;
    }
    return r;
}

/// O(n^2) threshold clustering over labelled points: components of the
/// graph connecting points at distance <= d, split into cores (size >= 2)
/// and singleton outliers.
struct BruteClusters {
    std::vector<std::vector<NodeId>> cores;  // members sorted, cores by min member
    std::vector<NodeId> outliers;            // sorted
};

inline BruteClusters brute_force_clusters(const std::vector<NodeId>& ids,
                                          const std::vector<std::vector<double>>& points,
                                          double d) {
    const std::size_t n = ids.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t t = 0; t < points[i].size(); ++t) {
                double diff = points[i][t] - points[j][t];
                sum += diff * diff;
            }
            if (sum <= d * d) {
                std::size_t a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }

    std::map<std::size_t, std::vector<NodeId>> components;
    for (std::size_t i = 0; i < n; ++i) components[find(i)].push_back(ids[i]);

    BruteClusters result;
    for (auto& [root, members] : components) {
        std::sort(members.begin(), members.end());
        if (members.size() >= 2) result.cores.push_back(std::move(members));
        else result.outliers.push_back(members.front());
    }
    std::sort(result.cores.begin(), result.cores.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::sort(result.outliers.begin(), result.outliers.end());
    return result;
}

/// Exhaustive sweep: evaluates -conductance from scratch on every prefix
/// S ∪ {v_1..v_k} and returns the best prefix (ties to the smallest k).
inline NodeSet exhaustive_prefix_sweep(const Graph& g, const NodeSet& seeds,
                                       const std::vector<NodeId>& ranked) {
    if (ranked.empty()) return seeds;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 1; k <= ranked.size(); ++k) {
        std::vector<NodeId> members(seeds.begin(), seeds.end());
        members.insert(members.end(), ranked.begin(), ranked.begin() + k);
        double objective = -conductance(g, NodeSet(std::move(members)));
        if (objective > best) {
            best = objective;
            best_k = k;
        }
    }
    std::vector<NodeId> members(seeds.begin(), seeds.end());
    members.insert(members.end(), ranked.begin(), ranked.begin() + best_k);
    return NodeSet(std::move(members));
}

}  // namespace walkscan::testing
