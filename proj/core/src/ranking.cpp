#include "walkscan/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "walkscan/parallel.hpp"
#include "walkscan/rng.hpp"

namespace walkscan {

namespace {

const ScoreEntry* find_entry(const std::vector<ScoreEntry>& entries, NodeId v) {
    auto it = std::lower_bound(entries.begin(), entries.end(), v,
                               [](const ScoreEntry& e, NodeId n) { return e.node < n; });
    if (it == entries.end() || it->node != v) return nullptr;
    return &*it;
}

}  // namespace

double ScoreTable::raw_score(NodeId v) const {
    const ScoreEntry* e = find_entry(entries, v);
    return e ? e->raw : 0.0;
}

double ScoreTable::ranking_value(NodeId v) const {
    const ScoreEntry* e = find_entry(entries, v);
    return e ? e->value : 0.0;
}

ScoreTable pagerank_scores(const Graph& g, const NodeSet& seeds,
                           const PageRankParams& params) {
    if (params.alpha <= 0.0 || params.alpha >= 1.0)
        throw std::invalid_argument("damping factor must lie in (0, 1)");
    if (params.horizon < 1)
        throw std::invalid_argument("pagerank horizon must be >= 1");

    WalkDistribution start = uniform_seed_distribution(g, seeds);
    const double restart = 1.0 - params.alpha;

    // r is kept sparse and sorted, like the walk distributions.
    std::vector<std::pair<NodeId, double>> r = start.mass;
    for (int t = 0; t < params.horizon; ++t) {
        std::unordered_map<NodeId, double> next;
        next.reserve(r.size() * 4);
        for (const auto& [s, p0] : start.mass) next[s] = restart * p0;
        for (const auto& [u, p] : r) {
            const double share = params.alpha * p / static_cast<double>(g.degree(u));
            for (NodeId v : g.neighbors(u)) next[v] += share;
        }
        r.assign(next.begin(), next.end());
        std::sort(r.begin(), r.end());
    }

    ScoreTable table;
    table.seeds = seeds;
    table.params = params;
    table.entries.reserve(r.size());
    for (const auto& [v, raw] : r) {
        if (raw <= 0.0) continue;
        double value = params.degree_normalized
                           ? raw / static_cast<double>(g.degree(v))
                           : raw;
        table.entries.push_back({v, value, raw});
    }
    return table;
}

ScoreTable pagerank_from_embedding(const Embedding& emb, const NodeSet& seeds,
                                   double alpha) {
    if (emb.seeds != seeds)
        throw std::invalid_argument("embedding was computed from a different seed set");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("damping factor must lie in (0, 1)");

    const int T = emb.horizon;
    std::vector<double> weight(static_cast<std::size_t>(T) + 1, 0.0);
    double a_pow = alpha;
    for (int t = 1; t <= T; ++t) {
        weight[static_cast<std::size_t>(t)] = (t < T) ? (1.0 - alpha) * a_pow : a_pow;
        a_pow *= alpha;
    }

    ScoreTable table;
    table.seeds = seeds;
    table.params.alpha = alpha;
    table.params.horizon = T;
    for (std::size_t i = 0; i < emb.size(); ++i) {
        NodeId v = emb.nodes[i];
        if (seeds.contains(v)) continue;
        auto coords = emb.row(i);
        double score = 0.0;
        for (int t = 1; t <= T; ++t)
            score += weight[static_cast<std::size_t>(t)] *
                     coords[static_cast<std::size_t>(t - 1)];
        if (score > 0.0) table.entries.push_back({v, score, score});
    }
    return table;
}

int lex_compare(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("lex_compare: vector length mismatch");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < v[i]) return -1;
        if (u[i] > v[i]) return 1;
    }
    return 0;
}

NodeSet sweep(const Graph& g, const NodeSet& seeds, const RankedList& ranked,
              std::vector<double>* objective_trace) {
    if (objective_trace) objective_trace->clear();
    if (ranked.empty()) return seeds;

    const std::size_t n = g.node_count();
    const std::size_t total_volume = g.total_volume();
    std::vector<std::uint8_t> in_set(n, 0);

    std::size_t size = seeds.size();
    std::size_t volume = 0;
    std::size_t cut = 0;
    for (NodeId s : seeds) in_set[s] = 1;
    for (NodeId s : seeds) {
        volume += g.degree(s);
        for (NodeId u : g.neighbors(s)) {
            if (u == s) continue;
            if (!in_set[u]) ++cut;
        }
    }

    double best_objective = -std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 1; k <= ranked.size(); ++k) {
        NodeId v = ranked[k - 1];
        in_set[v] = 1;
        ++size;
        volume += g.degree(v);
        for (NodeId u : g.neighbors(v)) {
            if (u == v) continue;
            if (in_set[u]) --cut;
            else ++cut;
        }

        double phi = 1.0;  // worst value for degenerate prefixes
        if (size < n) {
            std::size_t denom = std::min(volume, total_volume - volume);
            if (denom > 0) phi = static_cast<double>(cut) / static_cast<double>(denom);
        }
        double objective = -phi;
        if (objective_trace) objective_trace->push_back(objective);
        if (objective > best_objective) {
            best_objective = objective;
            best_k = k;
        }
    }

    std::vector<NodeId> members(seeds.begin(), seeds.end());
    members.insert(members.end(), ranked.begin(), ranked.begin() + best_k);
    return NodeSet(std::move(members));
}

RankedList rank_by_score(const ScoreTable& scores) {
    std::vector<std::pair<double, NodeId>> order;
    order.reserve(scores.entries.size());
    for (const ScoreEntry& e : scores.entries) {
        if (scores.seeds.contains(e.node)) continue;
        if (e.value <= 0.0) continue;
        order.emplace_back(e.value, e.node);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    RankedList ranked;
    ranked.reserve(order.size());
    for (const auto& [value, v] : order) ranked.push_back(v);
    return ranked;
}

NodeSet pagerank_community(const Graph& g, const NodeSet& seeds,
                           const PageRankParams& params) {
    ScoreTable scores = pagerank_scores(g, seeds, params);
    return sweep(g, seeds, rank_by_score(scores));
}

NodeSet pagerank_threshold(const ScoreTable& scores, const NodeSet& seeds,
                           double lambda) {
    if (lambda < 0.0)
        throw std::invalid_argument("threshold must be >= 0");
    std::vector<NodeId> members(seeds.begin(), seeds.end());
    for (const ScoreEntry& e : scores.entries)
        if (e.raw > lambda) members.push_back(e.node);
    return NodeSet(std::move(members));
}

NodeSet lexrank_community(const Graph& g, const NodeSet& seeds, int horizon) {
    Embedding emb = compute_embedding(g, seeds, horizon);
    std::vector<std::size_t> order;
    order.reserve(emb.size());
    for (std::size_t i = 0; i < emb.size(); ++i)
        if (!seeds.contains(emb.nodes[i])) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        int c = lex_compare(emb.row(a), emb.row(b));
        if (c != 0) return c > 0;
        return emb.nodes[a] < emb.nodes[b];
    });
    RankedList ranked;
    ranked.reserve(order.size());
    for (std::size_t i : order) ranked.push_back(emb.nodes[i]);
    return sweep(g, seeds, ranked);
}

namespace {

// Per-community material for the threshold grid search: the base output is
// S itself; nodes enter as the candidate drops below their score.
struct ThresholdCurve {
    std::vector<std::pair<double, bool>> events;  // (score, in target), desc
    std::vector<double> seed_scores;              // observed but never leave S
    std::size_t base_size = 0;
    std::size_t base_intersection = 0;
    std::size_t target_size = 0;
    bool valid = false;
};

double f1_from_counts(std::size_t size, std::size_t intersection,
                      std::size_t target_size) {
    if (size + target_size == 0) return 0.0;
    return 2.0 * static_cast<double>(intersection) /
           static_cast<double>(size + target_size);
}

}  // namespace

CalibrationResult calibrate_threshold(const Graph& g, const CommunitySet& training,
                                      const PageRankParams& params,
                                      double seed_fraction, std::uint64_t rng_seed,
                                      std::size_t threads) {
    if (training.size() == 0)
        throw std::invalid_argument("calibration requires a non-empty training set");

    std::vector<ThresholdCurve> curves(training.size());
    parallel_for(training.size(), threads, [&](std::size_t i) {
        const NodeSet& community = training[i];
        std::mt19937_64 rng(derive_seed(rng_seed, /*stream=*/0, i));
        NodeSet seeds = sample_seeds(g, community,
                                     ceil_fraction(community.size(), seed_fraction), rng);
        if (seeds.empty()) return;  // no positive-degree member

        ScoreTable scores = pagerank_scores(g, seeds, params);
        ThresholdCurve& curve = curves[i];
        curve.valid = true;
        curve.target_size = community.size();
        curve.base_size = seeds.size();
        curve.base_intersection = intersection_size(seeds, community);
        for (const ScoreEntry& e : scores.entries) {
            if (seeds.contains(e.node)) curve.seed_scores.push_back(e.raw);
            else curve.events.emplace_back(e.raw, community.contains(e.node));
        }
        std::sort(curve.events.begin(), curve.events.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
    });

    std::size_t evaluated = 0;
    for (const ThresholdCurve& curve : curves)
        if (curve.valid) ++evaluated;

    // Candidate grid: all distinct observed scores, plus 0.
    std::vector<double> candidates;
    for (const ThresholdCurve& curve : curves) {
        for (const auto& [score, in_target] : curve.events) candidates.push_back(score);
        candidates.insert(candidates.end(), curve.seed_scores.begin(),
                          curve.seed_scores.end());
    }
    candidates.push_back(0.0);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    if (evaluated == 0)
        throw std::invalid_argument("no training community has a positive-degree node");

    // Each community's F1 is a step function of the threshold; accumulate
    // it over the candidate grid with range additions.
    std::vector<double> f1_sum(candidates.size() + 1, 0.0);
    auto add_range = [&](double lo, double hi, double value) {
        // Candidates c with lo <= c < hi.
        auto lo_it = std::lower_bound(candidates.begin(), candidates.end(), lo);
        auto hi_it = std::lower_bound(candidates.begin(), candidates.end(), hi);
        if (lo_it >= hi_it) return;
        f1_sum[static_cast<std::size_t>(lo_it - candidates.begin())] += value;
        f1_sum[static_cast<std::size_t>(hi_it - candidates.begin())] -= value;
    };

    const double inf = std::numeric_limits<double>::infinity();
    for (const ThresholdCurve& curve : curves) {
        if (!curve.valid) continue;
        std::size_t size = curve.base_size;
        std::size_t inter = curve.base_intersection;
        std::size_t i = 0;
        double upper = inf;
        while (true) {
            double lower = (i < curve.events.size()) ? curve.events[i].first : 0.0;
            if (lower < upper)
                add_range(lower, upper, f1_from_counts(size, inter, curve.target_size));
            if (i >= curve.events.size()) break;
            // All nodes sharing this score enter together.
            double score = curve.events[i].first;
            while (i < curve.events.size() && curve.events[i].first == score) {
                ++size;
                if (curve.events[i].second) ++inter;
                ++i;
            }
            upper = score;
        }
    }

    CalibrationResult result;
    result.evaluated = evaluated;
    result.skipped = training.size() - evaluated;
    double running = 0.0;
    double best_sum = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        running += f1_sum[i];
        if (running > best_sum) {  // strict: ties keep the smaller threshold
            best_sum = running;
            result.lambda = candidates[i];
        }
    }
    result.mean_f1 = best_sum / static_cast<double>(evaluated);
    return result;
}

}  // namespace walkscan
