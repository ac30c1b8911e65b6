#include "walkscan/walkscan.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "walkscan/metrics.hpp"

namespace walkscan {

namespace {

// Exact-coordinate grouping: nodes sharing an embedding point always land
// in the same component, so clustering runs on distinct points only.
struct PointGroup {
    std::span<const double> coords;
    std::vector<NodeId> members;
};

struct CoordKey {
    std::span<const double> coords;
};

struct CoordKeyHash {
    std::size_t operator()(const CoordKey& k) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (double c : k.coords) {
            std::uint64_t bits;
            std::memcpy(&bits, &c, sizeof(bits));
            h ^= bits;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

struct CoordKeyEq {
    bool operator()(const CoordKey& a, const CoordKey& b) const {
        return std::equal(a.coords.begin(), a.coords.end(), b.coords.begin(),
                          b.coords.end());
    }
};

struct CellKey {
    std::vector<std::int64_t> cell;

    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (std::int64_t c : k.cell) {
            h ^= static_cast<std::uint64_t>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        double diff = a[t] - b[t];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

ClusterResult cluster_points(const Embedding& emb, double distance) {
    if (distance <= 0.0)
        throw std::invalid_argument("distance threshold must be > 0");

    ClusterResult result;
    if (emb.size() == 0) return result;

    std::vector<PointGroup> groups;
    {
        std::unordered_map<CoordKey, std::size_t, CoordKeyHash, CoordKeyEq> seen;
        for (std::size_t i = 0; i < emb.size(); ++i) {
            auto coords = emb.row(i);
            auto [it, inserted] = seen.emplace(CoordKey{coords}, groups.size());
            if (inserted) groups.push_back({coords, {}});
            groups[it->second].members.push_back(emb.nodes[i]);
        }
    }

    const int T = emb.horizon;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> grid;
    grid.reserve(groups.size() * 2);
    auto cell_of = [&](std::span<const double> coords) {
        CellKey key;
        key.cell.resize(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t)
            key.cell[static_cast<std::size_t>(t)] =
                static_cast<std::int64_t>(std::floor(coords[static_cast<std::size_t>(t)] / distance));
        return key;
    };
    for (std::size_t i = 0; i < groups.size(); ++i)
        grid[cell_of(groups[i].coords)].push_back(i);

    const double threshold = distance * distance;
    UnionFind uf(groups.size());
    std::vector<CellKey> neighborhood;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        CellKey center = cell_of(groups[i].coords);
        // Enumerate the 3^T adjacent cells around the center cell.
        neighborhood.clear();
        neighborhood.push_back(center);
        for (int t = 0; t < T; ++t) {
            std::size_t count = neighborhood.size();
            for (std::size_t n = 0; n < count; ++n) {
                for (std::int64_t delta : {-1, 1}) {
                    CellKey shifted = neighborhood[n];
                    shifted.cell[static_cast<std::size_t>(t)] += delta;
                    neighborhood.push_back(std::move(shifted));
                }
            }
        }
        for (const CellKey& key : neighborhood) {
            auto it = grid.find(key);
            if (it == grid.end()) continue;
            for (std::size_t j : it->second) {
                if (j <= i) continue;
                if (uf.find(i) == uf.find(j)) continue;
                if (squared_distance(groups[i].coords, groups[j].coords) <= threshold)
                    uf.unite(i, j);
            }
        }
    }

    std::unordered_map<std::size_t, std::vector<NodeId>> components;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        auto& nodes = components[uf.find(i)];
        nodes.insert(nodes.end(), groups[i].members.begin(), groups[i].members.end());
    }

    std::vector<NodeId> outliers;
    for (auto& [root, nodes] : components) {
        if (nodes.size() >= WalkscanParams::min_core_size)
            result.cores.emplace_back(std::move(nodes));
        else
            outliers.push_back(nodes.front());
    }
    std::sort(result.cores.begin(), result.cores.end(),
              [](const NodeSet& a, const NodeSet& b) { return a[0] < b[0]; });
    result.outliers = NodeSet(std::move(outliers));
    return result;
}

CommunityList build_communities(const Graph& g, const Embedding& emb,
                                const ClusterResult& clusters) {
    CommunityList communities;
    communities.reserve(clusters.cores.size());
    const std::size_t T = static_cast<std::size_t>(emb.horizon);

    for (const NodeSet& core : clusters.cores) {
        std::vector<NodeId> members(core.begin(), core.end());
        for (NodeId v : core)
            for (NodeId u : g.neighbors(v))
                if (clusters.outliers.contains(u)) members.push_back(u);

        Community community;
        community.members = NodeSet(std::move(members));
        // Streaming mean: exact when every member shares one vector, which
        // keeps the lexicographic ordering of equal-region communities
        // from turning on rounding noise.
        community.mean.assign(T, 0.0);
        double count = 0.0;
        for (NodeId v : community.members) {
            auto coords = emb.vector_of(v);  // absent counts as zero
            count += 1.0;
            for (std::size_t t = 0; t < T; ++t) {
                double value = coords.empty() ? 0.0 : coords[t];
                community.mean[t] += (value - community.mean[t]) / count;
            }
        }
        communities.push_back(std::move(community));
    }

    std::sort(communities.begin(), communities.end(),
              [](const Community& a, const Community& b) {
                  int c = lex_compare(a.mean, b.mean);
                  if (c != 0) return c > 0;
                  if (a.members[0] != b.members[0]) return a.members[0] < b.members[0];
                  return a.members.ids() < b.members.ids();
              });
    return communities;
}

CommunityList detect_communities(const Graph& g, const NodeSet& seeds,
                       const WalkscanParams& params) {
    Embedding emb = compute_embedding(g, seeds, params.horizon);
    ClusterResult clusters = cluster_points(emb, params.distance);
    return build_communities(g, emb, clusters);
}

namespace {

NodeSet scored_set(const Community& community, const NodeSet& seeds,
                   bool include_seeds) {
    return include_seeds ? set_union(community.members, seeds) : community.members;
}

}  // namespace

ExpertScore evaluate_expert(const CommunityList& comms, const NodeSet& target,
                            std::size_t k, const NodeSet& seeds,
                            bool include_seeds) {
    if (k < 1)
        throw std::invalid_argument("expert K must be >= 1");
    ExpertScore best;
    if (comms.empty()) {
        best.f1 = f1_score(seeds, target).f1;
        return best;
    }
    const std::size_t limit = std::min(k, comms.size());
    for (std::size_t j = 0; j < limit; ++j) {
        double f1 = f1_score(scored_set(comms[j], seeds, include_seeds), target).f1;
        if (!best.index || f1 > best.f1) {
            best.f1 = f1;
            best.index = j;
        }
    }
    return best;
}

MergeScore evaluate_merge(const CommunityList& comms, const NodeSet& target,
                          std::size_t k, const NodeSet& seeds,
                          bool include_seeds) {
    if (k < 1)
        throw std::invalid_argument("expert K must be >= 1");
    MergeScore best;
    if (comms.empty()) {
        best.f1 = f1_score(seeds, target).f1;
        return best;
    }
    const std::size_t limit = std::min(k, comms.size());
    for (std::size_t j = 0; j < limit; ++j) {
        double f1 = f1_score(scored_set(comms[j], seeds, include_seeds), target).f1;
        if (!best.indices || f1 > best.f1) {
            best.f1 = f1;
            best.indices = {j, j};
        }
    }
    for (std::size_t i = 0; i < limit; ++i) {
        for (std::size_t j = i + 1; j < limit; ++j) {
            NodeSet merged = set_union(comms[i].members, comms[j].members);
            if (include_seeds) merged = set_union(merged, seeds);
            double f1 = f1_score(merged, target).f1;
            if (f1 > best.f1) {
                best.f1 = f1;
                best.indices = {i, j};
            }
        }
    }
    return best;
}

NodeSet union_all(const CommunityList& comms) {
    NodeSet all;
    for (const Community& community : comms) all = set_union(all, community.members);
    return all;
}

}  // namespace walkscan
