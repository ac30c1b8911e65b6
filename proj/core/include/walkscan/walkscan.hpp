#pragma once

#include <optional>
#include <vector>

#include "walkscan/embedding.hpp"
#include "walkscan/graph.hpp"
#include "walkscan/ranking.hpp"

namespace walkscan {

struct WalkscanParams {
    int horizon = 2;
    double distance = 0.0;
    /// Union the seed set into the community picked for scoring.
    bool include_seeds_in_output = true;

    static constexpr std::size_t min_core_size = 2;
};

/// Connected components of the distance-threshold graph over the embedded
/// points. Components of size >= 2 are cores; singletons are outliers.
struct ClusterResult {
    std::vector<NodeSet> cores;  // pairwise disjoint, ordered by smallest member
    NodeSet outliers;
};

/// Euclidean threshold clustering with a non-strict cutoff (<= d). Neighbor
/// search uses a uniform grid of cell side d, so only the 3^T adjacent
/// cells are compared per point; the result equals a brute-force pass.
ClusterResult cluster_points(const Embedding& emb, double distance);

struct Community {
    NodeSet members;
    EmbeddingVector mean;
};

/// Detected communities in reverse lexicographic order of their mean
/// embedding vector (ties by smallest member id).
using CommunityList = std::vector<Community>;

/// Expands each core with the outliers adjacent to it in the original
/// graph (an outlier may join several communities), then orders the
/// communities by their mean embedding vector.
CommunityList build_communities(const Graph& g, const Embedding& emb,
                                const ClusterResult& clusters);

/// Full pipeline: embed, cluster, expand. Returns an empty list when no
/// core exists (callers fall back to the seed set).
CommunityList detect_communities(const Graph& g, const NodeSet& seeds,
                       const WalkscanParams& params);

struct ExpertScore {
    double f1 = 0.0;
    std::optional<std::size_t> index;  // best community, if any
};

/// Best F1 over the first min(K, J) communities; an empty list scores the
/// seed set itself.
ExpertScore evaluate_expert(const CommunityList& comms, const NodeSet& target,
                            std::size_t k, const NodeSet& seeds,
                            bool include_seeds = true);

struct MergeScore {
    double f1 = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> indices;  // i == j: singleton
};

/// Best F1 over the first min(K, J) communities and all their pairwise
/// unions.
MergeScore evaluate_merge(const CommunityList& comms, const NodeSet& target,
                          std::size_t k, const NodeSet& seeds,
                          bool include_seeds = true);

/// Union of every detected community.
NodeSet union_all(const CommunityList& comms);

}  // namespace walkscan
