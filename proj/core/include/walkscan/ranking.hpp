#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "walkscan/embedding.hpp"
#include "walkscan/graph.hpp"

namespace walkscan {

struct PageRankParams {
    double alpha = 0.85;
    int horizon = 3;
    /// Rank by r_T(v)/d(v) instead of r_T(v).
    bool degree_normalized = false;
};

struct ScoreEntry {
    NodeId node;
    double value;  // ranking value: raw, or raw/degree when normalized
    double raw;    // r_T(v)
};

/// Sparse PageRank values. Absent nodes score 0.
struct ScoreTable {
    NodeSet seeds;
    PageRankParams params;
    std::vector<ScoreEntry> entries;  // sorted by node id, raw > 0

    double raw_score(NodeId v) const;
    double ranking_value(NodeId v) const;
};

/// Node ranking with seeds excluded; strictly ordered by the declared
/// comparator with ties broken by ascending node id.
using RankedList = std::vector<NodeId>;

/// T applications of r_{t+1} = (1-alpha) r_0 + alpha P r_t from
/// r_0 = 1_S/|S|. Total mass stays 1 at every step.
ScoreTable pagerank_scores(const Graph& g, const NodeSet& seeds,
                           const PageRankParams& params);

/// Scores of the non-seed nodes recovered from the embedding alone:
/// r_T(v) = sum_{t=1}^{T-1} (1-alpha) alpha^t p_t(v) + alpha^T p_T(v).
ScoreTable pagerank_from_embedding(const Embedding& emb, const NodeSet& seeds,
                                   double alpha);

/// Lexicographic comparison of two equal-length embedding vectors: the
/// first differing coordinate decides, compared exactly (no epsilon).
/// Returns <0, 0, >0 like a three-way comparator.
int lex_compare(std::span<const double> u, std::span<const double> v);

/// Scans the prefixes S ∪ {v_1..v_k} of the ranking and returns the best
/// one under the objective (higher is better; the built-in objective is
/// -conductance, maintained incrementally). Ties resolve to the smallest k;
/// an empty ranking returns the seeds.
NodeSet sweep(const Graph& g, const NodeSet& seeds, const RankedList& ranked,
              std::vector<double>* objective_trace = nullptr);

/// Ranking by descending PageRank value (ties by ascending id), seeds and
/// zero scores excluded.
RankedList rank_by_score(const ScoreTable& scores);

/// PageRank scoring followed by the conductance sweep.
NodeSet pagerank_community(const Graph& g, const NodeSet& seeds,
                           const PageRankParams& params);

/// S ∪ {v : r_T(v) > lambda}, strict inequality on the raw scores.
NodeSet pagerank_threshold(const ScoreTable& scores, const NodeSet& seeds,
                           double lambda);

/// Ranking by descending embedding vector in lexicographic order followed
/// by the conductance sweep.
NodeSet lexrank_community(const Graph& g, const NodeSet& seeds, int horizon);

struct CalibrationResult {
    double lambda = 0.0;
    double mean_f1 = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;  // communities with no positive-degree node
};

/// Picks the threshold maximizing the mean F1 of pagerank_threshold over
/// the training communities. For each community, ceil(|C| * seed_fraction)
/// seeds are sampled with a per-community rng derived from rng_seed. The
/// candidate grid is every distinct observed score plus 0; ties resolve to
/// the smaller threshold.
CalibrationResult calibrate_threshold(const Graph& g, const CommunitySet& training,
                                      const PageRankParams& params,
                                      double seed_fraction, std::uint64_t rng_seed,
                                      std::size_t threads = 0);

}  // namespace walkscan
