#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "walkscan/graph.hpp"
#include "walkscan/ranking.hpp"
#include "walkscan/walkscan.hpp"

namespace walkscan::bench {

enum class Algorithm { pr, prt, lr, ws, ws_expert, ws_merge };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Trial seeds derive from the master seed through fixed (stream, index)
/// pairs, so any single trial can be replayed in isolation:
///   single recovery     stream 1, index = community
///   random seed sets    stream 2, index = k << 32 | run
///   local seed sets     stream 3, index = l << 32 | community
///   d-sweep             stream 4, index = community (seeds shared across d)
///   threshold calibration  stream 5 (master for the per-community split)
enum Stream : std::uint64_t {
    stream_single = 1,
    stream_random = 2,
    stream_local = 3,
    stream_d_sweep = 4,
    stream_calibrate = 5,
};

struct ExperimentConfig {
    std::string graph_path;
    std::string community_path;
    std::string out_path;

    std::size_t max_communities = 5000;
    std::vector<Algorithm> algorithms = {Algorithm::pr,        Algorithm::prt,
                                         Algorithm::lr,        Algorithm::ws,
                                         Algorithm::ws_expert, Algorithm::ws_merge};
    double seed_fraction = 0.1;
    std::size_t expert_k = 2;
    double distance = 0.2;
    double alpha = 0.85;
    int pagerank_horizon = 3;
    int walkscan_horizon = 2;
    /// Fixed threshold for prt; when unset, calibrated on the even-index
    /// communities and evaluated on the odd-index ones.
    std::optional<double> lambda;
    bool degree_normalized = false;
    bool include_seeds = true;

    std::vector<std::size_t> k_values = {1, 2, 3, 4, 5};
    std::vector<std::size_t> l_values = {1, 2, 3};
    std::vector<double> d_values;  // empty -> default_distance_grid()
    std::size_t runs = 1000;

    std::uint64_t rng_seed = 42;
    std::size_t threads = 0;
    bool per_trial_rows = false;
};

/// The 13-point log grid 0.001 .. 1.
std::vector<double> default_distance_grid();

struct ResultRow {
    std::string experiment;
    std::string algorithm;
    std::string param_name;  // "", "k", "l" or "d"
    double param_value = 0.0;
    double mean_f1 = 0.0;
    std::size_t trials = 0;
    std::uint64_t rng_seed = 0;
};

struct TrialRow {
    std::string experiment;
    std::string algorithm;
    std::string param_name;
    double param_value = 0.0;
    std::size_t trial = 0;
    double f1 = 0.0;
};

struct BenchReport {
    std::vector<ResultRow> rows;
    std::vector<TrialRow> trial_rows;
    std::size_t skipped_trials = 0;
    std::optional<CalibrationResult> calibration;
};

/// One seed sample per ground-truth community; every requested algorithm
/// is scored against that community.
BenchReport run_single_recovery(const Graph& g, const CommunitySet& comms,
                                const ExperimentConfig& cfg);

/// Random size-k seed sets; the target is the union of the communities the
/// seeds belong to. Scores pr (sweep output) and ws (union of all detected
/// communities).
BenchReport run_random_seed_bench(const Graph& g, const CommunitySet& comms,
                                  const ExperimentConfig& cfg);

/// Seeds sampled from the distance-l ball around each community; scores pr
/// and ws-expert.
BenchReport run_local_seed_bench(const Graph& g, const CommunitySet& comms,
                                 const ExperimentConfig& cfg);

/// Single-recovery protocol for ws and ws-expert at every distance of the
/// grid; per-community seeds are shared across the grid points.
BenchReport run_d_sweep(const Graph& g, const CommunitySet& comms,
                        const ExperimentConfig& cfg);

/// Writes "node_id,p1,...,pT[,label]" rows, one per embedded node, using
/// original ids. Labels are joined by node when provided.
void export_embedding_csv(const Graph& g, const Embedding& emb,
                          const std::string& out_path,
                          const std::unordered_map<NodeId, std::string>* labels = nullptr);

std::string results_to_csv(const std::vector<ResultRow>& rows);
std::string trials_to_csv(const std::vector<TrialRow>& rows);

/// Writes the result CSV to out_path, per-trial rows to
/// out_path + ".trials.csv" when requested, and a JSON sidecar echoing the
/// full configuration to out_path + ".meta.json".
void write_report(const BenchReport& report, const ExperimentConfig& cfg,
                  const std::string& out_path);

}  // namespace walkscan::bench
