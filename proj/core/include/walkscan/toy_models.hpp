#pragma once

#include <cstdint>

#include "walkscan/embedding.hpp"
#include "walkscan/graph.hpp"

namespace walkscan {

/// Two overlapping cliques C1 and C2, disconnected from everything else.
/// With self-loops on, every clique node is adjacent to itself, so its
/// degree equals the size of the union of its cliques and the closed-form
/// embeddings below are exact.
struct TwoCliqueSpec {
    std::size_t n1 = 0;       // |C1|
    std::size_t n2 = 0;       // |C2|
    std::size_t overlap = 0;  // |C1 ∩ C2|, >= 1
    bool with_self_loops = true;
    std::size_t n_background = 0;  // isolated extra nodes

    std::size_t union_size() const { return n1 + n2 - overlap; }
    void validate() const;
};

/// Region labels of the generated graph. Layout: C1\C2 first, then the
/// intersection, then C2\C1, then the background.
struct TwoCliqueGraph {
    TwoCliqueSpec spec;
    Graph graph;
    NodeSet c1_only;
    NodeSet shared;
    NodeSet c2_only;
    NodeSet background;
    NodeSet c1;
    NodeSet c2;
};

TwoCliqueGraph generate_two_cliques(const TwoCliqueSpec& spec);

/// Seed composition: a seeds in C1\C2, b seeds in the intersection.
struct SeedSplit {
    std::size_t a = 0;
    std::size_t b = 0;

    void validate(const TwoCliqueSpec& spec) const;
};

/// The canonical seed set for a split: the first a nodes of C1\C2 and the
/// first b nodes of the intersection (regions are symmetric, so any choice
/// gives the same embedding).
NodeSet toy_seed_set(const TwoCliqueGraph& toy, const SeedSplit& split);

/// Exact T=2 embedding of the self-loop model. Every node of a region maps
/// to the region's vector; mixtures are normalized by a+b so the values
/// equal the measured embedding.
struct ToyEmbedding {
    EmbeddingVector shared_vec;   // C1 ∩ C2
    EmbeddingVector c1_only_vec;  // C1 \ C2
    EmbeddingVector c2_only_vec;  // C2 \ C1
    double alpha1 = 0.0;          // |C1 \ C2| / |C1|
    double alpha2 = 0.0;          // |C2 \ C1| / |C2|
    double beta = 0.0;            // |C1 ∩ C2| / |C1 ∪ C2|
};

ToyEmbedding closed_form_embedding(const TwoCliqueSpec& spec, const SeedSplit& split);

/// d1 separates C1\C2 from the intersection; d2 separates C2\C1 from the
/// rest. d2_exact is measured on the closed-form vectors; d2_bound is the
/// additive closed form, an upper bound by the triangle inequality.
struct SeparationDistances {
    double d1 = 0.0;
    double d2_exact = 0.0;
    double d2_bound = 0.0;
};

SeparationDistances separation_distances(const TwoCliqueSpec& spec,
                                         const SeedSplit& split);

/// Removes k distinct intra-clique non-loop edges uniformly at random.
/// No node may drop to degree 0. Deterministic under rng_seed.
Graph perturb_remove_edges(const Graph& g, const TwoCliqueSpec& spec,
                           std::size_t k, std::uint64_t rng_seed);

/// Adds l distinct random edges between clique nodes and background nodes.
Graph perturb_add_external(const Graph& g, const TwoCliqueSpec& spec,
                           std::size_t l, std::uint64_t rng_seed);

enum class PerturbationMode { removed_edges, external_links };

/// The displayed worst-case expressions for the embedding shift caused by
/// the perturbation, in the unnormalized convention (multiply the measured
/// per-node shift by |S| to compare). Also carries the comparison
/// thresholds used by the recovery arguments.
struct PerturbationBounds {
    // removed_edges mode
    double eps1_a_max = 0.0;
    double eps2_a = 0.0;  // equality under a worst-case degree assumption
    double eps2_b_max = 0.0;
    // external_links mode
    double eps1_in_max = 0.0;
    double eps1_out_max = 0.0;
    double eps2_in = 0.0;
    double eps2_out_max = 0.0;

    std::size_t count = 0;  // the governing k or l
    /// |S|/|C1| * sqrt(1 + alpha1^2): the shift budget for clique nodes.
    double threshold_d2 = 0.0;
    /// Smallest second coordinate among the three region vectors
    /// (unnormalized); external nodes must stay below it.
    double min_region_p2 = 0.0;
};

/// Evaluates every displayed bound for the given mode with |S| = s_size
/// seeds in C1\C2. count is k (removed_edges) or l (external_links).
PerturbationBounds perturbation_bounds(const TwoCliqueSpec& spec, std::size_t s_size,
                                       std::size_t count, PerturbationMode mode);

}  // namespace walkscan
