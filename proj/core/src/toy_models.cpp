#include "walkscan/toy_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "walkscan/rng.hpp"

namespace walkscan {

void TwoCliqueSpec::validate() const {
    if (overlap < 1)
        throw std::invalid_argument("two-clique spec requires overlap >= 1");
    if (overlap > std::min(n1, n2))
        throw std::invalid_argument("overlap exceeds a clique size");
    if (n1 <= overlap)
        throw std::invalid_argument("C1 \\ C2 must be non-empty");
}

TwoCliqueGraph generate_two_cliques(const TwoCliqueSpec& spec) {
    spec.validate();

    const std::size_t c1_begin = 0;
    const std::size_t shared_begin = spec.n1 - spec.overlap;
    const std::size_t c2_begin = spec.n1;
    const std::size_t background_begin = spec.union_size();
    const std::size_t node_count = background_begin + spec.n_background;

    std::vector<std::pair<NodeId, NodeId>> edges;
    auto add_clique = [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u)
            for (std::size_t v = u + 1; v < end; ++v)
                edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    };
    add_clique(c1_begin, spec.n1);                 // C1
    add_clique(shared_begin, background_begin);    // C2
    if (spec.with_self_loops)
        for (std::size_t v = 0; v < background_begin; ++v)
            edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(v));

    auto range_set = [](std::size_t begin, std::size_t end) {
        std::vector<NodeId> ids;
        ids.reserve(end - begin);
        for (std::size_t v = begin; v < end; ++v) ids.push_back(static_cast<NodeId>(v));
        return NodeSet::from_sorted(std::move(ids));
    };

    TwoCliqueGraph toy;
    toy.spec = spec;
    toy.graph = Graph::from_edges(node_count, edges);
    toy.c1_only = range_set(c1_begin, shared_begin);
    toy.shared = range_set(shared_begin, spec.n1);
    toy.c2_only = range_set(c2_begin, background_begin);
    toy.background = range_set(background_begin, node_count);
    toy.c1 = range_set(c1_begin, spec.n1);
    toy.c2 = range_set(shared_begin, background_begin);
    return toy;
}

void SeedSplit::validate(const TwoCliqueSpec& spec) const {
    if (a + b < 1)
        throw std::invalid_argument("seed split requires a + b >= 1");
    if (a > spec.n1 - spec.overlap)
        throw std::invalid_argument("not enough nodes in C1 \\ C2 for a seeds");
    if (b > spec.overlap)
        throw std::invalid_argument("not enough nodes in the intersection for b seeds");
}

NodeSet toy_seed_set(const TwoCliqueGraph& toy, const SeedSplit& split) {
    split.validate(toy.spec);
    std::vector<NodeId> seeds;
    seeds.reserve(split.a + split.b);
    for (std::size_t i = 0; i < split.a; ++i) seeds.push_back(toy.c1_only[i]);
    for (std::size_t i = 0; i < split.b; ++i) seeds.push_back(toy.shared[i]);
    return NodeSet(std::move(seeds));
}

ToyEmbedding closed_form_embedding(const TwoCliqueSpec& spec, const SeedSplit& split) {
    spec.validate();
    split.validate(spec);
    if (!spec.with_self_loops)
        throw std::invalid_argument(
            "closed forms are exact only for the self-loop model");

    const double n1 = static_cast<double>(spec.n1);
    const double u = static_cast<double>(spec.union_size());
    const double a = static_cast<double>(split.a);
    const double b = static_cast<double>(split.b);
    const double norm = a + b;

    ToyEmbedding toy;
    toy.alpha1 = static_cast<double>(spec.n1 - spec.overlap) / n1;
    toy.alpha2 = static_cast<double>(spec.n2 - spec.overlap) / static_cast<double>(spec.n2);
    toy.beta = static_cast<double>(spec.overlap) / u;

    // Single-seed embeddings: p1/p2 for a seed in C1\C2, pA/pB/pC for a
    // seed in the intersection.
    const EmbeddingVector p1 = {1.0 / n1, (toy.alpha1 + toy.beta) / n1};
    const EmbeddingVector p2 = {0.0, toy.beta / n1};
    const EmbeddingVector pa = {1.0 / u, (toy.alpha1 + toy.alpha2 + toy.beta) / u};
    const EmbeddingVector pb = {1.0 / u, (toy.alpha1 + toy.beta) / u};
    const EmbeddingVector pc = {1.0 / u, (toy.alpha2 + toy.beta) / u};

    auto mixture = [&](const EmbeddingVector& from_c1, const EmbeddingVector& from_both) {
        EmbeddingVector out(2);
        for (std::size_t t = 0; t < 2; ++t)
            out[t] = (a * from_c1[t] + b * from_both[t]) / norm;
        return out;
    };
    toy.shared_vec = mixture(p1, pa);
    toy.c1_only_vec = mixture(p1, pb);
    toy.c2_only_vec = mixture(p2, pc);
    return toy;
}

namespace {

double euclidean(const EmbeddingVector& x, const EmbeddingVector& y) {
    double sum = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        double diff = x[t] - y[t];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

}  // namespace

SeparationDistances separation_distances(const TwoCliqueSpec& spec,
                                         const SeedSplit& split) {
    ToyEmbedding toy = closed_form_embedding(spec, split);

    SeparationDistances d;
    d.d1 = euclidean(toy.c1_only_vec, toy.shared_vec);
    d.d2_exact = std::min(euclidean(toy.c2_only_vec, toy.c1_only_vec),
                          euclidean(toy.c2_only_vec, toy.shared_vec));

    const double a = static_cast<double>(split.a);
    const double b = static_cast<double>(split.b);
    d.d2_bound = (a / static_cast<double>(spec.n1) *
                      std::sqrt(1.0 + toy.alpha1 * toy.alpha1) +
                  b / static_cast<double>(spec.union_size()) *
                      std::abs(toy.alpha1 - toy.alpha2)) /
                 (a + b);
    return d;
}

namespace {

std::vector<std::pair<NodeId, NodeId>> nonloop_edges(const Graph& g) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.nonloop_edge_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (NodeId u : g.neighbors(v))
            if (u > v) edges.emplace_back(v, u);
    return edges;
}

std::vector<std::pair<NodeId, NodeId>> all_edges(const Graph& g) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.edge_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (NodeId u : g.neighbors(v))
            if (u >= v) edges.emplace_back(v, u);
    return edges;
}

}  // namespace

Graph perturb_remove_edges(const Graph& g, const TwoCliqueSpec& spec,
                           std::size_t k, std::uint64_t rng_seed) {
    std::vector<std::pair<NodeId, NodeId>> removable = nonloop_edges(g);
    if (k >= removable.size() && k > 0)
        throw std::invalid_argument("k exceeds the number of removable edges");
    (void)spec;

    std::mt19937_64 rng(rng_seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        // Partial Fisher-Yates: the first k slots are the removed edges.
        std::vector<std::size_t> picks(removable.size());
        for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(
                                    uniform_below(rng, picks.size() - i));
            std::swap(picks[i], picks[j]);
        }
        std::vector<std::uint8_t> removed(removable.size(), 0);
        for (std::size_t i = 0; i < k; ++i) removed[picks[i]] = 1;

        std::vector<std::pair<NodeId, NodeId>> kept;
        kept.reserve(g.edge_count() - k);
        for (std::size_t i = 0; i < removable.size(); ++i)
            if (!removed[i]) kept.push_back(removable[i]);
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (g.has_edge(v, v)) kept.emplace_back(v, v);

        Graph candidate = Graph::from_edges(g.node_count(), kept);
        bool ok = true;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (g.degree(v) > 0 && candidate.degree(v) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return candidate;
    }
    throw std::runtime_error("could not remove edges without isolating a node");
}

Graph perturb_add_external(const Graph& g, const TwoCliqueSpec& spec,
                           std::size_t l, std::uint64_t rng_seed) {
    if (spec.n_background == 0)
        throw std::invalid_argument("external links require background nodes");

    const std::size_t clique_nodes = spec.union_size();
    const std::size_t pair_count = clique_nodes * spec.n_background;
    if (l > pair_count)
        throw std::invalid_argument("l exceeds the number of cross pairs");

    std::mt19937_64 rng(rng_seed);
    std::vector<std::size_t> picks(pair_count);
    for (std::size_t i = 0; i < pair_count; ++i) picks[i] = i;
    for (std::size_t i = 0; i < l; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, pair_count - i));
        std::swap(picks[i], picks[j]);
    }

    std::vector<std::pair<NodeId, NodeId>> edges = all_edges(g);
    for (std::size_t i = 0; i < l; ++i) {
        NodeId inside = static_cast<NodeId>(picks[i] / spec.n_background);
        NodeId outside = static_cast<NodeId>(clique_nodes + picks[i] % spec.n_background);
        edges.emplace_back(inside, outside);
    }
    return Graph::from_edges(g.node_count(), edges);
}

PerturbationBounds perturbation_bounds(const TwoCliqueSpec& spec, std::size_t s_size,
                                       std::size_t count, PerturbationMode mode) {
    spec.validate();
    const double c1 = static_cast<double>(spec.n1);
    const double u = static_cast<double>(spec.union_size());
    const double c1_only = static_cast<double>(spec.n1 - spec.overlap);
    const double shared = static_cast<double>(spec.overlap);
    const double s = static_cast<double>(s_size);
    const double alpha1 = c1_only / c1;

    PerturbationBounds bounds;
    bounds.count = count;
    bounds.threshold_d2 = s / c1 * std::sqrt(1.0 + alpha1 * alpha1);

    // Region vectors for S ⊂ C1\C2, unnormalized (seed-count scaled).
    ToyEmbedding regions =
        closed_form_embedding(spec, SeedSplit{std::max<std::size_t>(s_size, 1), 0});
    bounds.min_region_p2 = s * std::min({regions.shared_vec[1], regions.c1_only_vec[1],
                                         regions.c2_only_vec[1]});

    if (mode == PerturbationMode::removed_edges) {
        const double k = static_cast<double>(count);
        if (k >= c1)
            throw std::invalid_argument("k must be smaller than |C1|");
        bounds.eps1_a_max = k * s / (c1 * (c1 - k));
        bounds.eps2_a =
            s * (c1_only * (1.0 / ((c1 - k) * (c1 - k)) - 1.0 / (c1 * c1)) +
                 shared * (1.0 / ((c1 - k) * (u - k)) - 1.0 / (c1 * u)));
        bounds.eps2_b_max = k / (c1 * c1);
    } else {
        const double l = static_cast<double>(count);
        bounds.eps1_in_max = l * s / (c1 * (c1 + l));
        bounds.eps1_out_max = l / c1;
        bounds.eps2_in =
            s * (c1_only * (1.0 / (c1 * c1) - 1.0 / ((c1 + l) * (c1 + l))) +
                 shared * (1.0 / (c1 * u) - 1.0 / ((c1 + l) * (u + l))));
        bounds.eps2_out_max = l / (c1 * c1);
    }
    return bounds;
}

}  // namespace walkscan
