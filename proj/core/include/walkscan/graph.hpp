#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace walkscan {

using NodeId = std::uint32_t;

/// Sorted, duplicate-free set of node ids.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<NodeId> ids);

    static NodeSet from_sorted(std::vector<NodeId> ids);

    bool contains(NodeId v) const;
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    NodeId operator[](std::size_t i) const { return ids_[i]; }
    const std::vector<NodeId>& ids() const { return ids_; }

    bool operator==(const NodeSet&) const = default;

private:
    std::vector<NodeId> ids_;
};

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
std::size_t intersection_size(const NodeSet& a, const NodeSet& b);

/// Immutable undirected graph in CSR form. Node ids are dense (0-based).
///
/// A self-loop is stored as a single adjacency entry and contributes 1 to
/// the degree. Construction symmetrizes and deduplicates the edge list.
/// Safe to share read-only across threads.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list over dense ids. Edges may appear in any
    /// orientation and multiplicity; they are collapsed.
    static Graph from_edges(std::size_t node_count,
                            const std::vector<std::pair<NodeId, NodeId>>& edges);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const NodeId> neighbors(NodeId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    bool has_edge(NodeId u, NodeId v) const;

    std::size_t edge_count() const { return nonloop_edges_ + loop_edges_; }
    std::size_t nonloop_edge_count() const { return nonloop_edges_; }
    std::size_t loop_count() const { return loop_edges_; }
    /// Sum of all degrees (= 2 * nonloop edges + loops).
    std::size_t total_volume() const { return neighbors_.size(); }

    /// Dense id -> id used in the source file. Identity when the graph was
    /// built in memory.
    std::int64_t original_id(NodeId v) const;
    std::optional<NodeId> dense_id(std::int64_t original) const;
    bool has_id_map() const { return !original_ids_.empty(); }

    void set_id_map(std::vector<std::int64_t> original_ids);

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> neighbors_;
    std::size_t nonloop_edges_ = 0;
    std::size_t loop_edges_ = 0;
    std::vector<std::int64_t> original_ids_;
    std::unordered_map<std::int64_t, NodeId> dense_ids_;
};

/// Ordered list of ground-truth communities.
struct CommunitySet {
    std::vector<NodeSet> communities;
    std::size_t skipped_empty_lines = 0;

    std::size_t size() const { return communities.size(); }
    const NodeSet& operator[](std::size_t i) const { return communities[i]; }
};

/// Reads a SNAP-style edge list: one "u v" pair per line, '#' starts a
/// comment line, blank lines are ignored. Ids are remapped to a dense
/// 0-based range in order of first appearance; the map is kept on the graph.
Graph load_edge_list(const std::string& path);

/// Writes one "u v" line per undirected edge (loops as "u u"), using
/// original ids when the graph carries an id map.
void write_edge_list(const Graph& g, const std::string& path);

/// Reads communities (one per line, whitespace-separated ids) resolved
/// through the graph's id map. Keeps the first max_count communities in
/// file order; blank lines are skipped and counted.
CommunitySet load_communities(const Graph& g, const std::string& path,
                              std::size_t max_count);

/// All nodes at BFS distance <= l from some node of c (includes c).
NodeSet nodes_within_distance(const Graph& g, const NodeSet& c, std::size_t l);

}  // namespace walkscan
