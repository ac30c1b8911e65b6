#include <doctest.h>

#include <cmath>
#include <random>

#include "support/builders.hpp"
#include "support/oracles.hpp"
#include "walkscan/toy_models.hpp"
#include "walkscan/walkscan.hpp"

using namespace walkscan;
using namespace walkscan::testing;

namespace {

// Hand-built embedding for degenerate clustering tests.
Embedding make_embedding(int horizon, const std::vector<NodeId>& nodes,
                         const std::vector<double>& coords) {
    Embedding emb;
    emb.horizon = horizon;
    emb.nodes = nodes;
    emb.coords = coords;
    return emb;
}

bool same_clusters(const ClusterResult& got, const BruteClusters& want) {
    if (got.outliers != NodeSet(want.outliers)) return false;
    if (got.cores.size() != want.cores.size()) return false;
    for (std::size_t i = 0; i < got.cores.size(); ++i)
        if (got.cores[i] != NodeSet(want.cores[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("identical points form one core") {
    Embedding emb = make_embedding(2, {4, 7, 9}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
    ClusterResult r = cluster_points(emb, 0.001);
    REQUIRE(r.cores.size() == 1);
    CHECK(r.cores[0] == NodeSet({4, 7, 9}));
    CHECK(r.outliers.empty());
}

TEST_CASE("threshold is non-strict and splits at 1.5d") {
    const double d = 0.1;
    Embedding emb = make_embedding(1, {0, 1, 2}, {0.0, d, 2.5 * d});
    ClusterResult r = cluster_points(emb, d);
    REQUIRE(r.cores.size() == 1);
    CHECK(r.cores[0] == NodeSet({0, 1}));
    CHECK(r.outliers == NodeSet({2}));
}

TEST_CASE("empty embedding clusters to nothing") {
    Embedding emb = make_embedding(2, {}, {});
    ClusterResult r = cluster_points(emb, 0.5);
    CHECK(r.cores.empty());
    CHECK(r.outliers.empty());
    CHECK_THROWS_AS(cluster_points(emb, 0.0), std::invalid_argument);
}

TEST_CASE("two-clique toy splits into three region cores below d1") {
    TwoCliqueSpec spec{5, 7, 2, true, 0};
    TwoCliqueGraph toy = generate_two_cliques(spec);
    SeedSplit split{1, 1};
    NodeSet seeds = toy_seed_set(toy, split);
    SeparationDistances dist = separation_distances(spec, split);

    Embedding emb = compute_embedding(toy.graph, seeds, 2);
    ClusterResult r = cluster_points(emb, dist.d1 / 2.0);
    REQUIRE(r.cores.size() == 3);
    CHECK(r.outliers.empty());

    // Verify against the brute-force oracle.
    std::vector<NodeId> ids(emb.nodes);
    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < emb.size(); ++i)
        points.emplace_back(emb.row(i).begin(), emb.row(i).end());
    CHECK(same_clusters(r, brute_force_clusters(ids, points, dist.d1 / 2.0)));
}

TEST_CASE("clustering equals the brute-force oracle on random point sets") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 60; ++trial) {
        int horizon = 1 + static_cast<int>(uniform_below(rng, 3));
        std::size_t n = 2 + uniform_below(rng, 120);
        std::vector<NodeId> ids;
        std::vector<double> coords;
        std::vector<std::vector<double>> points;
        for (std::size_t i = 0; i < n; ++i) {
            ids.push_back(static_cast<NodeId>(i));
            std::vector<double> p;
            for (int t = 0; t < horizon; ++t) {
                double c = static_cast<double>(uniform_below(rng, 1000)) / 1000.0;
                // Duplicate some coordinates to exercise the grouping path.
                if (uniform_below(rng, 4) == 0) c = 0.25;
                p.push_back(c);
                coords.push_back(c);
            }
            points.push_back(std::move(p));
        }
        double d = 0.01 + static_cast<double>(uniform_below(rng, 400)) / 1000.0;
        Embedding emb = make_embedding(horizon, ids, coords);
        CHECK(same_clusters(cluster_points(emb, d),
                            brute_force_clusters(ids, points, d)));
    }
}

TEST_CASE("outliers join every adjacent core") {
    // Two cliques, plus node 8 adjacent to both but embedded far away.
    std::vector<Edge> edges;
    add_clique(edges, 0, 4);
    add_clique(edges, 4, 8);
    edges.emplace_back(0, 8);
    edges.emplace_back(4, 8);
    Graph g = Graph::from_edges(9, edges);

    std::vector<NodeId> ids = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> coords = {0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 0.5};
    Embedding emb = make_embedding(1, ids, coords);
    ClusterResult clusters = cluster_points(emb, 0.1);
    REQUIRE(clusters.cores.size() == 2);
    CHECK(clusters.outliers == NodeSet({8}));

    CommunityList comms = build_communities(g, emb, clusters);
    REQUIRE(comms.size() == 2);
    CHECK(comms[0].members.contains(8));
    CHECK(comms[1].members.contains(8));
    // Means order by reverse lexicographic order.
    CHECK(comms[0].mean[0] > comms[1].mean[0]);
}

TEST_CASE("no outliers means communities equal cores") {
    TwoCliqueGraph toy = generate_two_cliques({4, 4, 2, true, 0});
    NodeSet seeds({0});
    Embedding emb = compute_embedding(toy.graph, seeds, 2);
    ClusterResult clusters = cluster_points(emb, 1e-6);
    CommunityList comms = build_communities(toy.graph, emb, clusters);
    REQUIRE(comms.size() == clusters.cores.size());
    for (std::size_t i = 0; i < comms.size(); ++i) {
        bool is_core = false;
        for (const NodeSet& core : clusters.cores)
            if (core == comms[i].members) is_core = true;
        CHECK(is_core);
    }
}

TEST_CASE("walkscan on the two-clique toy follows the regime analysis") {
    TwoCliqueSpec spec{5, 7, 2, true, 0};
    TwoCliqueGraph toy = generate_two_cliques(spec);
    SeedSplit split{1, 1};
    NodeSet seeds = toy_seed_set(toy, split);
    SeparationDistances dist = separation_distances(spec, split);

    WalkscanParams params;
    params.horizon = 2;

    // d < d1: intersection, C1-only and C2-only come out in this order.
    params.distance = dist.d1 / 2.0;
    CommunityList tight = detect_communities(toy.graph, seeds, params);
    REQUIRE(tight.size() == 3);
    CHECK(tight[0].members == toy.shared);
    CHECK(tight[1].members == toy.c1_only);
    CHECK(tight[2].members == toy.c2_only);

    // d1 < d < d2: C1 and C2 \ C1.
    params.distance = (dist.d1 + dist.d2_exact) / 2.0;
    CommunityList merged = detect_communities(toy.graph, seeds, params);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].members == toy.c1);
    CHECK(merged[1].members == toy.c2_only);
}

TEST_CASE("walkscan on disjoint self-loop cliques returns the seeded clique") {
    Graph g = disjoint_cliques(5, true);
    WalkscanParams params;
    params.horizon = 2;
    params.distance = 0.01;
    CommunityList comms = detect_communities(g, NodeSet({0}), params);
    REQUIRE(comms.size() == 1);
    CHECK(comms[0].members == range_set(0, 5));
}

TEST_CASE("huge distance lumps the whole reached set together") {
    Graph g = star_graph(6);
    WalkscanParams params;
    params.horizon = 2;
    params.distance = 10.0;
    CommunityList comms = detect_communities(g, NodeSet({0}), params);
    REQUIRE(comms.size() == 1);
    CHECK(comms[0].members == range_set(0, 7));
}

TEST_CASE("expert evaluation picks the best of the first K communities") {
    TwoCliqueSpec spec{50, 40, 10, true, 0};
    TwoCliqueGraph toy = generate_two_cliques(spec);
    SeedSplit split{5, 1};
    NodeSet seeds = toy_seed_set(toy, split);
    SeparationDistances dist = separation_distances(spec, split);

    WalkscanParams params;
    params.horizon = 2;
    params.distance = dist.d1 / 2.0;
    CommunityList comms = detect_communities(toy.graph, seeds, params);
    REQUIRE(comms.size() == 3);

    // Target C1: plain WS (K = 1) scores the intersection, the expert
    // prefers C1 \ C2.
    ExpertScore ws = evaluate_expert(comms, toy.c1, 1, seeds, true);
    ExpertScore expert = evaluate_expert(comms, toy.c1, 2, seeds, true);
    CHECK(ws.index == 0);
    CHECK(expert.index == 1);
    CHECK(expert.f1 > ws.f1);

    // Merging the intersection with C1 \ C2 recovers C1 exactly.
    MergeScore merge = evaluate_merge(comms, toy.c1, 2, seeds, true);
    CHECK(merge.f1 == 1.0);
    REQUIRE(merge.indices.has_value());
    CHECK(*merge.indices == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("expert evaluation edge cases") {
    CommunityList empty;
    NodeSet seeds({0, 1});
    NodeSet target({0, 1, 2, 3});
    ExpertScore fallback = evaluate_expert(empty, target, 2, seeds, true);
    CHECK(fallback.f1 == doctest::Approx(2.0 * 2 / 6).epsilon(1e-15));
    CHECK(!fallback.index.has_value());

    CommunityList one;
    one.push_back({target, {1.0, 1.0}});
    ExpertScore exact = evaluate_expert(one, target, 1, seeds, true);
    CHECK(exact.f1 == 1.0);

    MergeScore merge_single = evaluate_merge(one, target, 2, seeds, true);
    ExpertScore expert_single = evaluate_expert(one, target, 1, seeds, true);
    CHECK(merge_single.f1 == expert_single.f1);

    CHECK_THROWS_AS(evaluate_expert(one, target, 0, seeds, true),
                    std::invalid_argument);
}

TEST_CASE("merging two disjoint halves of the target") {
    NodeSet target = range_set(0, 8);
    CommunityList comms;
    comms.push_back({range_set(0, 4), {0.9, 0.9}});
    comms.push_back({range_set(4, 8), {0.5, 0.5}});
    NodeSet seeds;  // no seeds: include flag has nothing to add

    ExpertScore expert = evaluate_expert(comms, target, 2, seeds, true);
    CHECK(expert.f1 < 1.0);
    MergeScore merge = evaluate_merge(comms, target, 2, seeds, true);
    CHECK(merge.f1 == 1.0);
    CHECK(*merge.indices == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("union_all") {
    CHECK(union_all({}).empty());

    CommunityList one;
    one.push_back({range_set(2, 5), {1.0}});
    CHECK(union_all(one) == range_set(2, 5));

    TwoCliqueSpec spec{5, 7, 2, true, 0};
    TwoCliqueGraph toy = generate_two_cliques(spec);
    SeedSplit split{1, 1};
    SeparationDistances dist = separation_distances(spec, split);
    WalkscanParams params;
    params.horizon = 2;
    params.distance = dist.d1 / 2.0;
    CommunityList comms = detect_communities(toy.graph, toy_seed_set(toy, split), params);
    CHECK(union_all(comms) == range_set(0, 10));
}

TEST_CASE("cores stay disjoint and overlap happens only through outliers") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 6 + uniform_below(rng, 40);
        Graph g = random_connected_graph(n, 0.12, rng);
        NodeSet seeds(sample_without_replacement(range_set(0, n).ids(),
                                                 1 + uniform_below(rng, 3), rng));
        WalkscanParams params;
        params.horizon = 2;
        params.distance = 0.02 + static_cast<double>(uniform_below(rng, 200)) / 1000.0;

        Embedding emb = compute_embedding(g, seeds, params.horizon);
        ClusterResult clusters = cluster_points(emb, params.distance);
        for (std::size_t i = 0; i < clusters.cores.size(); ++i) {
            CHECK(clusters.cores[i].size() >= 2);
            CHECK(intersection_size(clusters.cores[i], clusters.outliers) == 0);
            for (std::size_t j = i + 1; j < clusters.cores.size(); ++j)
                CHECK(intersection_size(clusters.cores[i], clusters.cores[j]) == 0);
        }

        CommunityList comms = build_communities(g, emb, clusters);
        for (std::size_t i = 0; i < comms.size(); ++i) {
            for (std::size_t j = i + 1; j < comms.size(); ++j) {
                // Shared members must be outliers.
                for (NodeId v : comms[i].members)
                    if (comms[j].members.contains(v))
                        CHECK(clusters.outliers.contains(v));
            }
        }
    }
}

TEST_CASE("two-clique regime has 3 cores below d1 and 2 between d1 and d2") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 8; ++trial) {
        // Every region needs >= 2 members to count as a core.
        TwoCliqueSpec spec;
        spec.n1 = 5 + uniform_below(rng, 11);
        spec.overlap = 2 + uniform_below(rng, spec.n1 - 4);
        spec.n2 = spec.overlap + 2 + uniform_below(rng, 10);
        spec.with_self_loops = true;
        TwoCliqueGraph toy = generate_two_cliques(spec);
        SeedSplit split{1, 1};
        SeparationDistances dist = separation_distances(spec, split);
        if (dist.d1 <= 0.0 || dist.d1 >= dist.d2_exact) continue;
        NodeSet seeds = toy_seed_set(toy, split);
        Embedding emb = compute_embedding(toy.graph, seeds, 2);

        CHECK(cluster_points(emb, dist.d1 * 0.5).cores.size() == 3);
        CHECK(cluster_points(emb, (dist.d1 + dist.d2_exact) / 2.0).cores.size() == 2);
    }
}

TEST_CASE("raising d never increases the core count on duplicated-point embeddings") {
    // Every point below carries at least two nodes, so no singleton can
    // become a new core as d grows; cores can only merge.
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t distinct = 2 + uniform_below(rng, 30);
        std::vector<NodeId> ids;
        std::vector<double> coords;
        NodeId next = 0;
        for (std::size_t i = 0; i < distinct; ++i) {
            double x = static_cast<double>(uniform_below(rng, 1000)) / 1000.0;
            double y = static_cast<double>(uniform_below(rng, 1000)) / 1000.0;
            std::size_t copies = 2 + uniform_below(rng, 3);
            for (std::size_t c = 0; c < copies; ++c) {
                ids.push_back(next++);
                coords.push_back(x);
                coords.push_back(y);
            }
        }
        Embedding emb = make_embedding(2, ids, coords);

        std::size_t previous = static_cast<std::size_t>(-1);
        for (double d : {0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
            std::size_t cores = cluster_points(emb, d).cores.size();
            if (previous != static_cast<std::size_t>(-1)) CHECK(cores <= previous);
            previous = cores;
        }
    }
}

TEST_CASE("raising d never increases cores plus outliers on arbitrary embeddings") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t n = 5 + uniform_below(rng, 60);
        std::vector<NodeId> ids;
        std::vector<double> coords;
        for (std::size_t i = 0; i < n; ++i) {
            ids.push_back(static_cast<NodeId>(i));
            coords.push_back(static_cast<double>(uniform_below(rng, 1000)) / 1000.0);
            coords.push_back(static_cast<double>(uniform_below(rng, 1000)) / 1000.0);
        }
        Embedding emb = make_embedding(2, ids, coords);

        std::size_t previous = static_cast<std::size_t>(-1);
        for (double d : {0.001, 0.01, 0.05, 0.1, 0.3, 1.0, 2.0}) {
            ClusterResult r = cluster_points(emb, d);
            std::size_t components = r.cores.size() + r.outliers.size();
            if (previous != static_cast<std::size_t>(-1)) CHECK(components <= previous);
            previous = components;
        }
    }
}
