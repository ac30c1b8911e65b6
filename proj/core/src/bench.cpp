#include "walkscan/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "walkscan/metrics.hpp"
#include "walkscan/parallel.hpp"
#include "walkscan/rng.hpp"

namespace walkscan::bench {

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::pr: return "pr";
        case Algorithm::prt: return "prt";
        case Algorithm::lr: return "lr";
        case Algorithm::ws: return "ws";
        case Algorithm::ws_expert: return "ws-expert";
        case Algorithm::ws_merge: return "ws-merge";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::pr, Algorithm::prt, Algorithm::lr, Algorithm::ws,
                        Algorithm::ws_expert, Algorithm::ws_merge})
        if (name == algorithm_name(a)) return a;
    return std::nullopt;
}

std::vector<double> default_distance_grid() {
    std::vector<double> grid;
    grid.reserve(13);
    for (int i = 0; i < 13; ++i) grid.push_back(std::pow(10.0, -3.0 + i * 0.25));
    return grid;
}

namespace {

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

bool wants(const ExperimentConfig& cfg, Algorithm a) {
    return std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) !=
           cfg.algorithms.end();
}

PageRankParams pagerank_params(const ExperimentConfig& cfg) {
    return {cfg.alpha, cfg.pagerank_horizon, cfg.degree_normalized};
}

WalkscanParams walkscan_params(const ExperimentConfig& cfg, double distance) {
    WalkscanParams params;
    params.horizon = cfg.walkscan_horizon;
    params.distance = distance;
    params.include_seeds_in_output = cfg.include_seeds;
    return params;
}

NodeSet with_seeds(const NodeSet& found, const NodeSet& seeds, bool include) {
    return include ? set_union(found, seeds) : found;
}

/// Scores every requested algorithm for one (community, seeds) trial.
/// PageRank scores and the WalkSCAN community list are shared between the
/// algorithms that need them.
std::vector<double> run_trial(const Graph& g, const NodeSet& target,
                              const NodeSet& seeds, const ExperimentConfig& cfg,
                              double lambda, const std::vector<Algorithm>& algos) {
    std::optional<ScoreTable> scores;
    auto pr_scores = [&]() -> const ScoreTable& {
        if (!scores) scores = pagerank_scores(g, seeds, pagerank_params(cfg));
        return *scores;
    };
    std::optional<CommunityList> detected;
    auto ws_communities = [&]() -> const CommunityList& {
        if (!detected) detected = detect_communities(g, seeds, walkscan_params(cfg, cfg.distance));
        return *detected;
    };

    std::vector<double> f1(algos.size(), 0.0);
    for (std::size_t i = 0; i < algos.size(); ++i) {
        switch (algos[i]) {
            case Algorithm::pr: {
                NodeSet out = sweep(g, seeds, rank_by_score(pr_scores()));
                f1[i] = f1_score(out, target).f1;
                break;
            }
            case Algorithm::prt: {
                NodeSet out = pagerank_threshold(pr_scores(), seeds, lambda);
                f1[i] = f1_score(out, target).f1;
                break;
            }
            case Algorithm::lr: {
                NodeSet out = lexrank_community(g, seeds, cfg.pagerank_horizon);
                f1[i] = f1_score(out, target).f1;
                break;
            }
            case Algorithm::ws:
                f1[i] = evaluate_expert(ws_communities(), target, 1, seeds,
                                        cfg.include_seeds)
                            .f1;
                break;
            case Algorithm::ws_expert:
                f1[i] = evaluate_expert(ws_communities(), target, cfg.expert_k, seeds,
                                        cfg.include_seeds)
                            .f1;
                break;
            case Algorithm::ws_merge:
                f1[i] = evaluate_merge(ws_communities(), target, cfg.expert_k, seeds,
                                       cfg.include_seeds)
                            .f1;
                break;
        }
    }
    return f1;
}

struct TrialOutcome {
    bool evaluated = false;
    std::vector<double> f1;
};

void append_rows(BenchReport& report, const ExperimentConfig& cfg,
                 const std::string& experiment, const std::string& param_name,
                 double param_value, const std::vector<Algorithm>& algos,
                 const std::vector<TrialOutcome>& outcomes,
                 const std::vector<std::uint8_t>* scored_mask = nullptr) {
    for (std::size_t a = 0; a < algos.size(); ++a) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (!outcomes[i].evaluated) continue;
            if (scored_mask && !(*scored_mask)[i]) continue;
            sum += outcomes[i].f1[a];
            ++count;
            if (cfg.per_trial_rows)
                report.trial_rows.push_back({experiment,
                                             std::string(algorithm_name(algos[a])),
                                             param_name, param_value, i,
                                             outcomes[i].f1[a]});
        }
        ResultRow row;
        row.experiment = experiment;
        row.algorithm = std::string(algorithm_name(algos[a]));
        row.param_name = param_name;
        row.param_value = param_value;
        row.mean_f1 = count ? sum / static_cast<double>(count) : 0.0;
        row.trials = count;
        row.rng_seed = cfg.rng_seed;
        report.rows.push_back(std::move(row));
    }
}

}  // namespace

BenchReport run_single_recovery(const Graph& g, const CommunitySet& comms,
                                const ExperimentConfig& cfg) {
    BenchReport report;
    if (comms.size() == 0)
        throw std::invalid_argument("single recovery needs at least one community");

    double lambda = cfg.lambda.value_or(0.0);
    std::vector<std::uint8_t> prt_scored(comms.size(), 1);
    const bool calibrate = wants(cfg, Algorithm::prt) && !cfg.lambda;
    if (calibrate) {
        CommunitySet training;
        for (std::size_t i = 0; i < comms.size(); i += 2)
            training.communities.push_back(comms[i]);
        report.calibration = calibrate_threshold(
            g, training, pagerank_params(cfg), cfg.seed_fraction,
            derive_seed(cfg.rng_seed, stream_calibrate, 0), cfg.threads);
        lambda = report.calibration->lambda;
        for (std::size_t i = 0; i < comms.size(); i += 2) prt_scored[i] = 0;
    }

    std::vector<TrialOutcome> outcomes(comms.size());
    parallel_for(comms.size(), cfg.threads, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(cfg.rng_seed, stream_single, i));
        NodeSet seeds = sample_seeds(g, comms[i],
                                     ceil_fraction(comms[i].size(), cfg.seed_fraction),
                                     rng);
        if (seeds.empty()) return;
        outcomes[i].f1 = run_trial(g, comms[i], seeds, cfg, lambda, cfg.algorithms);
        outcomes[i].evaluated = true;
    });
    for (const TrialOutcome& o : outcomes)
        if (!o.evaluated) ++report.skipped_trials;

    // prt means only cover the communities it was not calibrated on.
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        std::vector<Algorithm> one = {cfg.algorithms[a]};
        std::vector<TrialOutcome> filtered(outcomes.size());
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            filtered[i].evaluated = outcomes[i].evaluated;
            if (outcomes[i].evaluated) filtered[i].f1 = {outcomes[i].f1[a]};
        }
        const std::vector<std::uint8_t>* mask =
            (calibrate && cfg.algorithms[a] == Algorithm::prt) ? &prt_scored : nullptr;
        append_rows(report, cfg, "single", "", 0.0, one, filtered, mask);
    }
    return report;
}

BenchReport run_random_seed_bench(const Graph& g, const CommunitySet& comms,
                                  const ExperimentConfig& cfg) {
    BenchReport report;
    if (cfg.runs == 0)
        throw std::invalid_argument("random seed bench needs runs >= 1");

    // Node -> communities membership, for building the target union.
    std::vector<std::vector<std::uint32_t>> memberships(g.node_count());
    for (std::size_t c = 0; c < comms.size(); ++c)
        for (NodeId v : comms[c]) memberships[v].push_back(static_cast<std::uint32_t>(c));
    std::vector<NodeId> eligible;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.degree(v) > 0 && !memberships[v].empty()) eligible.push_back(v);
    if (eligible.empty())
        throw std::invalid_argument("no positive-degree node belongs to a community");

    const std::vector<Algorithm> algos = {Algorithm::pr, Algorithm::ws};
    for (std::size_t k : cfg.k_values) {
        if (k == 0 || k > eligible.size()) continue;
        std::vector<TrialOutcome> outcomes(cfg.runs);
        parallel_for(cfg.runs, cfg.threads, [&](std::size_t run) {
            std::mt19937_64 rng(derive_seed(cfg.rng_seed, stream_random,
                                            (static_cast<std::uint64_t>(k) << 32) | run));
            // k distinct eligible nodes by rejection.
            std::vector<NodeId> picked;
            while (picked.size() < k) {
                NodeId v = eligible[uniform_below(rng, eligible.size())];
                if (std::find(picked.begin(), picked.end(), v) == picked.end())
                    picked.push_back(v);
            }
            NodeSet seeds(std::move(picked));

            std::vector<std::uint32_t> target_comms;
            for (NodeId v : seeds)
                target_comms.insert(target_comms.end(), memberships[v].begin(),
                                    memberships[v].end());
            std::sort(target_comms.begin(), target_comms.end());
            target_comms.erase(std::unique(target_comms.begin(), target_comms.end()),
                               target_comms.end());
            NodeSet target;
            for (std::uint32_t c : target_comms) target = set_union(target, comms[c]);

            TrialOutcome& outcome = outcomes[run];
            outcome.f1.resize(algos.size());
            outcome.f1[0] =
                f1_score(pagerank_community(g, seeds, pagerank_params(cfg)), target).f1;
            CommunityList detected =
                detect_communities(g, seeds, walkscan_params(cfg, cfg.distance));
            NodeSet merged = union_all(detected);
            if (merged.empty()) merged = seeds;
            else merged = with_seeds(merged, seeds, cfg.include_seeds);
            outcome.f1[1] = f1_score(merged, target).f1;
            outcome.evaluated = true;
        });
        append_rows(report, cfg, "random-seeds", "k", static_cast<double>(k), algos,
                    outcomes);
    }
    return report;
}

BenchReport run_local_seed_bench(const Graph& g, const CommunitySet& comms,
                                 const ExperimentConfig& cfg) {
    BenchReport report;
    const std::vector<Algorithm> algos = {Algorithm::pr, Algorithm::ws_expert};
    for (std::size_t l : cfg.l_values) {
        std::vector<TrialOutcome> outcomes(comms.size());
        parallel_for(comms.size(), cfg.threads, [&](std::size_t i) {
            std::mt19937_64 rng(derive_seed(cfg.rng_seed, stream_local,
                                            (static_cast<std::uint64_t>(l) << 32) | i));
            NodeSet ball = nodes_within_distance(g, comms[i], l);
            NodeSet seeds = sample_seeds(
                g, ball, ceil_fraction(comms[i].size(), cfg.seed_fraction), rng);
            if (seeds.empty()) return;
            outcomes[i].f1 = run_trial(g, comms[i], seeds, cfg, 0.0, algos);
            outcomes[i].evaluated = true;
        });
        for (const TrialOutcome& o : outcomes)
            if (!o.evaluated) ++report.skipped_trials;
        append_rows(report, cfg, "local-seeds", "l", static_cast<double>(l), algos,
                    outcomes);
    }
    return report;
}

BenchReport run_d_sweep(const Graph& g, const CommunitySet& comms,
                        const ExperimentConfig& cfg) {
    BenchReport report;
    std::vector<double> grid = cfg.d_values.empty() ? default_distance_grid()
                                                    : cfg.d_values;
    const std::vector<Algorithm> algos = {Algorithm::ws, Algorithm::ws_expert};

    // Seeds are drawn once per community so the sweep isolates the effect
    // of the distance parameter.
    std::vector<NodeSet> seed_sets(comms.size());
    for (std::size_t i = 0; i < comms.size(); ++i) {
        std::mt19937_64 rng(derive_seed(cfg.rng_seed, stream_d_sweep, i));
        seed_sets[i] = sample_seeds(
            g, comms[i], ceil_fraction(comms[i].size(), cfg.seed_fraction), rng);
    }

    for (double d : grid) {
        std::vector<TrialOutcome> outcomes(comms.size());
        parallel_for(comms.size(), cfg.threads, [&](std::size_t i) {
            if (seed_sets[i].empty()) return;
            ExperimentConfig local = cfg;
            local.distance = d;
            outcomes[i].f1 = run_trial(g, comms[i], seed_sets[i], local, 0.0, algos);
            outcomes[i].evaluated = true;
        });
        for (const TrialOutcome& o : outcomes)
            if (!o.evaluated) ++report.skipped_trials;
        append_rows(report, cfg, "d-sweep", "d", d, algos, outcomes);
    }
    return report;
}

void export_embedding_csv(const Graph& g, const Embedding& emb,
                          const std::string& out_path,
                          const std::unordered_map<NodeId, std::string>* labels) {
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + out_path);
    out << "node_id";
    for (int t = 1; t <= emb.horizon; ++t) out << ",p" << t;
    if (labels) out << ",label";
    out << '\n';
    for (std::size_t i = 0; i < emb.size(); ++i) {
        out << g.original_id(emb.nodes[i]);
        for (double c : emb.row(i)) out << ',' << format_double(c);
        if (labels) {
            auto it = labels->find(emb.nodes[i]);
            out << ',' << (it == labels->end() ? "" : it->second);
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed: " + out_path);
}

std::string results_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "experiment,algorithm,param,value,mean_f1,trials,rng_seed\n";
    for (const ResultRow& row : rows) {
        out << row.experiment << ',' << row.algorithm << ',' << row.param_name << ',';
        if (!row.param_name.empty()) out << format_double(row.param_value);
        out << ',' << format_double(row.mean_f1) << ',' << row.trials << ','
            << row.rng_seed << '\n';
    }
    return out.str();
}

std::string trials_to_csv(const std::vector<TrialRow>& rows) {
    std::ostringstream out;
    out << "experiment,algorithm,param,value,trial,f1\n";
    for (const TrialRow& row : rows) {
        out << row.experiment << ',' << row.algorithm << ',' << row.param_name << ',';
        if (!row.param_name.empty()) out << format_double(row.param_value);
        out << ',' << row.trial << ',' << format_double(row.f1) << '\n';
    }
    return out.str();
}

void write_report(const BenchReport& report, const ExperimentConfig& cfg,
                  const std::string& out_path) {
    {
        std::ofstream out(out_path);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + out_path);
        out << results_to_csv(report.rows);
    }
    if (cfg.per_trial_rows) {
        std::ofstream out(out_path + ".trials.csv");
        out << trials_to_csv(report.trial_rows);
    }

    nlohmann::json meta;
    meta["experiment"] = report.rows.empty() ? "" : report.rows.front().experiment;
    meta["graph"] = cfg.graph_path;
    meta["communities"] = cfg.community_path;
    meta["max_communities"] = cfg.max_communities;
    std::vector<std::string> algo_names;
    for (Algorithm a : cfg.algorithms) algo_names.emplace_back(algorithm_name(a));
    meta["algorithms"] = algo_names;
    meta["seed_fraction"] = cfg.seed_fraction;
    meta["expert_k"] = cfg.expert_k;
    meta["distance"] = cfg.distance;
    meta["alpha"] = cfg.alpha;
    meta["pagerank_horizon"] = cfg.pagerank_horizon;
    meta["walkscan_horizon"] = cfg.walkscan_horizon;
    if (cfg.lambda) meta["lambda"] = *cfg.lambda;
    meta["degree_normalized"] = cfg.degree_normalized;
    meta["include_seeds"] = cfg.include_seeds;
    meta["k_values"] = cfg.k_values;
    meta["l_values"] = cfg.l_values;
    meta["d_values"] = cfg.d_values.empty() ? default_distance_grid() : cfg.d_values;
    meta["runs"] = cfg.runs;
    meta["rng_seed"] = cfg.rng_seed;
    meta["skipped_trials"] = report.skipped_trials;
    if (report.calibration) {
        meta["calibration"] = {{"lambda", report.calibration->lambda},
                               {"training_mean_f1", report.calibration->mean_f1},
                               {"evaluated", report.calibration->evaluated},
                               {"skipped", report.calibration->skipped}};
    }
    std::ofstream out(out_path + ".meta.json");
    if (!out)
        throw std::runtime_error("cannot open for writing: " + out_path + ".meta.json");
    out << meta.dump(2) << '\n';
}

}  // namespace walkscan::bench
