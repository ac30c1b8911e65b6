// Command-line front end: benchmark drivers, threshold calibration, the
// two-clique toy generator, embedding export and one-shot detection runs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "walkscan/bench.hpp"
#include "walkscan/metrics.hpp"
#include "walkscan/ranking.hpp"
#include "walkscan/rng.hpp"
#include "walkscan/toy_models.hpp"
#include "walkscan/walkscan.hpp"

namespace {

using namespace walkscan;
using nlohmann::json;

std::vector<bench::Algorithm> parse_algorithms(const std::string& list) {
    std::vector<bench::Algorithm> algos;
    std::stringstream stream(list);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        auto algo = bench::parse_algorithm(token);
        if (!algo)
            throw CLI::ValidationError("--algos", "unknown algorithm: " + token);
        algos.push_back(*algo);
    }
    if (algos.empty())
        throw CLI::ValidationError("--algos", "no algorithm given");
    return algos;
}

NodeSet parse_seed_ids(const Graph& g, const std::string& list) {
    std::vector<NodeId> seeds;
    std::stringstream stream(list);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        std::int64_t original = std::stoll(token);
        auto dense = g.dense_id(original);
        if (!dense)
            throw std::runtime_error("seed id " + token + " not present in graph");
        seeds.push_back(*dense);
    }
    if (seeds.empty())
        throw std::runtime_error("empty seed set");
    return NodeSet(std::move(seeds));
}

std::string join_original_ids(const Graph& g, const NodeSet& nodes) {
    std::ostringstream out;
    bool first = true;
    for (NodeId v : nodes) {
        if (!first) out << ' ';
        out << g.original_id(v);
        first = false;
    }
    return out.str();
}

json vector_json(const EmbeddingVector& v) { return json(v); }

struct CommonOptions {
    std::string graph_path;
    std::string community_path;
    std::string out_path = "results.csv";
    std::string algos = "pr,prt,lr,ws,ws-expert,ws-merge";
    std::string objective = "conductance";
    bench::ExperimentConfig cfg;
    std::optional<int> horizon_override;
    double lambda = -1.0;  // < 0 means calibrate
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool needs_communities) {
    cmd->add_option("--graph", opts.graph_path, "edge list file")->required();
    auto* comm = cmd->add_option("--communities", opts.community_path,
                                 "ground-truth community file");
    if (needs_communities) comm->required();
    cmd->add_option("--max-communities", opts.cfg.max_communities,
                    "cap on loaded communities")
        ->capture_default_str();
    cmd->add_option("--alpha", opts.cfg.alpha, "damping factor")->capture_default_str();
    cmd->add_option("--horizon", opts.horizon_override,
                    "walk horizon override for every algorithm");
    cmd->add_option("--pr-horizon", opts.cfg.pagerank_horizon,
                    "horizon for pr/prt/lr")
        ->capture_default_str();
    cmd->add_option("--ws-horizon", opts.cfg.walkscan_horizon, "horizon for ws modes")
        ->capture_default_str();
    cmd->add_option("--distance", opts.cfg.distance, "WalkSCAN distance threshold")
        ->capture_default_str();
    cmd->add_option("--lambda", opts.lambda,
                    "fixed prt threshold (omit to calibrate on half the communities)");
    cmd->add_flag("--degree-normalized", opts.cfg.degree_normalized,
                  "rank by score/degree");
    cmd->add_option("--objective", opts.objective, "sweep objective")
        ->check(CLI::IsMember({"conductance"}))
        ->capture_default_str();
    cmd->add_option("--expert-k", opts.cfg.expert_k, "communities shown to the expert")
        ->capture_default_str();
    cmd->add_option("--seed-fraction", opts.cfg.seed_fraction,
                    "seeds per community as a fraction of its size")
        ->capture_default_str();
    cmd->add_option("--runs", opts.cfg.runs, "trials per parameter point")
        ->capture_default_str();
    cmd->add_option("--rng-seed", opts.cfg.rng_seed, "master seed")
        ->capture_default_str();
    cmd->add_option("--threads", opts.cfg.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    cmd->add_flag("--per-community", opts.cfg.per_trial_rows,
                  "also write per-trial rows");
    cmd->add_option("--out", opts.out_path, "result CSV path")->capture_default_str();
    cmd->add_flag("--exclude-seeds", [&opts](std::int64_t) {
        opts.cfg.include_seeds = false;
    }, "score detected communities without uniting the seed set");
}

bench::ExperimentConfig finalize_config(CommonOptions& opts) {
    bench::ExperimentConfig cfg = opts.cfg;
    cfg.graph_path = opts.graph_path;
    cfg.community_path = opts.community_path;
    cfg.out_path = opts.out_path;
    cfg.algorithms = parse_algorithms(opts.algos);
    if (opts.horizon_override) {
        cfg.pagerank_horizon = *opts.horizon_override;
        cfg.walkscan_horizon = *opts.horizon_override;
    }
    if (opts.lambda >= 0.0) cfg.lambda = opts.lambda;
    return cfg;
}

int run_bench(const std::string& kind, CommonOptions& opts) {
    bench::ExperimentConfig cfg = finalize_config(opts);
    Graph g = load_edge_list(cfg.graph_path);
    CommunitySet comms = load_communities(g, cfg.community_path, cfg.max_communities);

    bench::BenchReport report;
    if (kind == "single") report = bench::run_single_recovery(g, comms, cfg);
    else if (kind == "random-seeds") report = bench::run_random_seed_bench(g, comms, cfg);
    else if (kind == "local-seeds") report = bench::run_local_seed_bench(g, comms, cfg);
    else report = bench::run_d_sweep(g, comms, cfg);

    bench::write_report(report, cfg, cfg.out_path);
    std::cout << bench::results_to_csv(report.rows);
    if (report.skipped_trials)
        std::cerr << "note: " << report.skipped_trials
                  << " trial(s) skipped (no positive-degree seed candidate)\n";
    return 0;
}

int run_calibrate(CommonOptions& opts) {
    bench::ExperimentConfig cfg = finalize_config(opts);
    Graph g = load_edge_list(cfg.graph_path);
    CommunitySet comms = load_communities(g, cfg.community_path, cfg.max_communities);

    CalibrationResult result = calibrate_threshold(
        g, comms, {cfg.alpha, cfg.pagerank_horizon, cfg.degree_normalized},
        cfg.seed_fraction, derive_seed(cfg.rng_seed, bench::stream_calibrate, 0),
        cfg.threads);

    json out = {{"lambda", result.lambda},
                {"training_mean_f1", result.mean_f1},
                {"evaluated", result.evaluated},
                {"skipped", result.skipped}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_toy(std::size_t n1, std::size_t n2, std::size_t overlap, bool no_loops,
            std::size_t background, std::size_t seeds_a, std::size_t seeds_b,
            const std::string& out_prefix) {
    TwoCliqueSpec spec{n1, n2, overlap, !no_loops, background};
    TwoCliqueGraph toy = generate_two_cliques(spec);
    SeedSplit split{seeds_a, seeds_b};

    json out;
    out["spec"] = {{"n1", n1},
                   {"n2", n2},
                   {"overlap", overlap},
                   {"self_loops", !no_loops},
                   {"background", background}};
    out["split"] = {{"a", seeds_a}, {"b", seeds_b}};
    out["seeds"] = json::array();
    for (NodeId v : toy_seed_set(toy, split)) out["seeds"].push_back(v);

    if (!no_loops) {
        ToyEmbedding closed = closed_form_embedding(spec, split);
        SeparationDistances d = separation_distances(spec, split);
        out["alpha1"] = closed.alpha1;
        out["alpha2"] = closed.alpha2;
        out["beta"] = closed.beta;
        out["closed_form"] = {{"intersection", vector_json(closed.shared_vec)},
                              {"c1_only", vector_json(closed.c1_only_vec)},
                              {"c2_only", vector_json(closed.c2_only_vec)}};
        out["distances"] = {
            {"d1", d.d1}, {"d2_exact", d.d2_exact}, {"d2_bound", d.d2_bound}};
    }

    if (!out_prefix.empty()) {
        std::string edges_path = out_prefix + ".edges";
        std::string labels_path = out_prefix + ".labels.csv";
        write_edge_list(toy.graph, edges_path);
        std::ofstream labels(labels_path);
        if (!labels)
            throw std::runtime_error("cannot open for writing: " + labels_path);
        labels << "node_id,region\n";
        auto dump_region = [&](const NodeSet& nodes, const char* name) {
            for (NodeId v : nodes) labels << v << ',' << name << '\n';
        };
        dump_region(toy.c1_only, "c1_only");
        dump_region(toy.shared, "intersection");
        dump_region(toy.c2_only, "c2_only");
        dump_region(toy.background, "background");
        out["files"] = {{"edges", edges_path}, {"labels", labels_path}};
    }

    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_embed(const std::string& graph_path, const std::string& seed_list, int horizon,
              const std::string& out_path, const std::string& labels_path) {
    Graph g = load_edge_list(graph_path);
    NodeSet seeds = parse_seed_ids(g, seed_list);
    Embedding emb = compute_embedding(g, seeds, horizon);

    std::unordered_map<NodeId, std::string> labels;
    if (!labels_path.empty()) {
        std::ifstream in(labels_path);
        if (!in)
            throw std::runtime_error("cannot open labels: " + labels_path);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            auto comma = line.find(',');
            if (comma == std::string::npos) continue;
            std::int64_t original = std::stoll(line.substr(0, comma));
            auto dense = g.dense_id(original);
            if (dense) labels[*dense] = line.substr(comma + 1);
        }
    }
    bench::export_embedding_csv(g, emb, out_path,
                                labels.empty() ? nullptr : &labels);
    std::cout << "wrote " << emb.size() << " rows to " << out_path << '\n';
    return 0;
}

int run_one_shot(const std::string& graph_path, const std::string& seed_list,
                 const std::string& algo, const std::string& mode, double alpha,
                 std::optional<int> horizon, double lambda, double distance,
                 std::size_t expert_k, const std::string& target_list, bool as_json) {
    Graph g = load_edge_list(graph_path);
    NodeSet seeds = parse_seed_ids(g, seed_list);
    std::optional<NodeSet> target;
    if (!target_list.empty()) target = parse_seed_ids(g, target_list);

    json out;
    out["algorithm"] = algo;
    std::vector<NodeSet> found;

    if (algo == "pr") {
        PageRankParams params{alpha, horizon.value_or(3), false};
        found.push_back(pagerank_community(g, seeds, params));
    } else if (algo == "prt") {
        if (lambda < 0.0)
            throw std::runtime_error("prt needs --lambda");
        PageRankParams params{alpha, horizon.value_or(3), false};
        found.push_back(pagerank_threshold(pagerank_scores(g, seeds, params), seeds,
                                           lambda));
    } else if (algo == "lr") {
        found.push_back(lexrank_community(g, seeds, horizon.value_or(3)));
    } else if (algo == "ws") {
        WalkscanParams params;
        params.horizon = horizon.value_or(2);
        params.distance = distance;
        CommunityList comms = detect_communities(g, seeds, params);
        out["mode"] = mode;
        if (mode == "union") {
            NodeSet merged = union_all(comms);
            found.push_back(merged.empty() ? seeds : set_union(merged, seeds));
        } else if (mode == "ws-expert" || mode == "ws-merge") {
            if (!target)
                throw std::runtime_error(mode + " needs --target to pick the best");
            if (mode == "ws-expert") {
                ExpertScore best = evaluate_expert(comms, *target, expert_k, seeds);
                found.push_back(best.index ? set_union(comms[*best.index].members, seeds)
                                           : seeds);
            } else {
                MergeScore best = evaluate_merge(comms, *target, expert_k, seeds);
                if (best.indices) {
                    NodeSet merged = set_union(comms[best.indices->first].members,
                                               comms[best.indices->second].members);
                    found.push_back(set_union(merged, seeds));
                } else {
                    found.push_back(seeds);
                }
            }
        } else {  // plain ws: every community, most relevant first
            if (comms.empty()) found.push_back(seeds);
            for (const Community& community : comms)
                found.push_back(set_union(community.members, seeds));
        }
    } else {
        throw std::runtime_error("unknown algorithm: " + algo);
    }

    out["communities"] = json::array();
    for (const NodeSet& set : found) {
        json entry;
        entry["size"] = set.size();
        entry["members"] = join_original_ids(g, set);
        if (target) entry["f1"] = f1_score(set, *target).f1;
        out["communities"].push_back(entry);
    }

    if (as_json) {
        std::cout << out.dump(2) << '\n';
    } else {
        for (const NodeSet& set : found)
            std::cout << join_original_ids(g, set) << '\n';
        if (target)
            std::cerr << "f1: " << f1_score(found.front(), *target).f1 << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-walk embeddings for local community detection"};
    app.require_subcommand(1);

    // bench single|random-seeds|local-seeds|d-sweep
    CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark drivers");
    bench_cmd->require_subcommand(1);
    CommonOptions bench_opts;
    std::vector<std::size_t> k_values, l_values;
    std::vector<double> d_values;
    const char* kinds[] = {"single", "random-seeds", "local-seeds", "d-sweep"};
    for (const char* kind : kinds) {
        CLI::App* cmd = bench_cmd->add_subcommand(kind);
        add_common_flags(cmd, bench_opts, true);
        cmd->add_option("--algos", bench_opts.algos, "comma-separated algorithm list")
            ->capture_default_str();
        if (std::string(kind) == "random-seeds")
            cmd->add_option("--k", k_values, "seed set sizes (default 1..5)");
        if (std::string(kind) == "local-seeds")
            cmd->add_option("--l", l_values, "ball radii (default 1..3)");
        if (std::string(kind) == "d-sweep")
            cmd->add_option("--d-grid", d_values,
                            "distance grid (default 13-point log grid 0.001..1)");
    }

    // calibrate
    CLI::App* calibrate_cmd =
        app.add_subcommand("calibrate", "pick the prt threshold on ground truth");
    CommonOptions calibrate_opts;
    add_common_flags(calibrate_cmd, calibrate_opts, true);

    // toy
    CLI::App* toy_cmd =
        app.add_subcommand("toy", "generate the two-clique model and its closed forms");
    std::size_t toy_n1 = 5, toy_n2 = 7, toy_overlap = 2, toy_background = 0;
    std::size_t toy_a = 1, toy_b = 0;
    bool toy_no_loops = false;
    std::string toy_prefix;
    toy_cmd->add_option("--n1", toy_n1, "|C1|")->capture_default_str();
    toy_cmd->add_option("--n2", toy_n2, "|C2|")->capture_default_str();
    toy_cmd->add_option("--overlap", toy_overlap, "|C1 ∩ C2|")->capture_default_str();
    toy_cmd->add_flag("--no-self-loops", toy_no_loops,
                      "drop the self-loops (closed forms unavailable)");
    toy_cmd->add_option("--background", toy_background, "isolated extra nodes")
        ->capture_default_str();
    toy_cmd->add_option("--seeds-a", toy_a, "seeds in C1 \\ C2")->capture_default_str();
    toy_cmd->add_option("--seeds-b", toy_b, "seeds in the intersection")
        ->capture_default_str();
    toy_cmd->add_option("--out-prefix", toy_prefix,
                        "write <prefix>.edges and <prefix>.labels.csv");

    // embed
    CLI::App* embed_cmd = app.add_subcommand("embed", "export the embedding as CSV");
    std::string embed_graph, embed_seeds, embed_out = "embedding.csv", embed_labels;
    int embed_horizon = 2;
    embed_cmd->add_option("--graph", embed_graph, "edge list file")->required();
    embed_cmd->add_option("--seeds", embed_seeds, "comma-separated seed ids")
        ->required();
    embed_cmd->add_option("--horizon", embed_horizon, "walk horizon")
        ->capture_default_str();
    embed_cmd->add_option("--out", embed_out, "output CSV")->capture_default_str();
    embed_cmd->add_option("--labels", embed_labels,
                          "node_id,label CSV joined into the output");

    // run
    CLI::App* run_cmd = app.add_subcommand("run", "one-shot detection from a seed set");
    std::string run_graph, run_seeds, run_algo = "pr", run_mode = "ws", run_target;
    double run_alpha = 0.85, run_lambda = -1.0, run_distance = 0.2;
    std::optional<int> run_horizon;
    std::size_t run_expert_k = 2;
    bool run_json = false;
    run_cmd->add_option("--graph", run_graph, "edge list file")->required();
    run_cmd->add_option("--seeds", run_seeds, "comma-separated seed ids")->required();
    run_cmd->add_option("--algo", run_algo, "pr | prt | lr | ws")
        ->check(CLI::IsMember({"pr", "prt", "lr", "ws"}))
        ->capture_default_str();
    run_cmd->add_option("--mode", run_mode, "ws output mode")
        ->check(CLI::IsMember({"ws", "ws-expert", "ws-merge", "union"}))
        ->capture_default_str();
    run_cmd->add_option("--alpha", run_alpha, "damping factor")->capture_default_str();
    run_cmd->add_option("--horizon", run_horizon, "walk horizon");
    run_cmd->add_option("--lambda", run_lambda, "prt threshold");
    run_cmd->add_option("--distance", run_distance, "WalkSCAN distance threshold")
        ->capture_default_str();
    run_cmd->add_option("--expert-k", run_expert_k, "communities shown to the expert")
        ->capture_default_str();
    run_cmd->add_option("--target", run_target,
                        "comma-separated target ids for scoring");
    run_cmd->add_flag("--json", run_json, "JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench_cmd->parsed()) {
            if (!k_values.empty()) bench_opts.cfg.k_values = k_values;
            if (!l_values.empty()) bench_opts.cfg.l_values = l_values;
            if (!d_values.empty()) bench_opts.cfg.d_values = d_values;
            for (const char* kind : kinds)
                if (bench_cmd->get_subcommand(kind)->parsed())
                    return run_bench(kind, bench_opts);
        }
        if (calibrate_cmd->parsed()) return run_calibrate(calibrate_opts);
        if (toy_cmd->parsed())
            return run_toy(toy_n1, toy_n2, toy_overlap, toy_no_loops, toy_background,
                           toy_a, toy_b, toy_prefix);
        if (embed_cmd->parsed())
            return run_embed(embed_graph, embed_seeds, embed_horizon, embed_out,
                             embed_labels);
        if (run_cmd->parsed())
            return run_one_shot(run_graph, run_seeds, run_algo, run_mode, run_alpha,
                                run_horizon, run_lambda, run_distance, run_expert_k,
                                run_target, run_json);
    } catch (const std::exception& e) {
        nlohmann::json error = {{"error", e.what()}};
        std::cerr << error.dump() << '\n';
        return 1;
    }
    return 0;
}
