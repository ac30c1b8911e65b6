#include "walkscan/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <fstream>
#include <stdexcept>

namespace walkscan {

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet NodeSet::from_sorted(std::vector<NodeId> ids) {
    NodeSet s;
    s.ids_ = std::move(ids);
    return s;
}

bool NodeSet::contains(NodeId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    std::vector<NodeId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet::from_sorted(std::move(out));
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    std::vector<NodeId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet::from_sorted(std::move(out));
}

std::size_t intersection_size(const NodeSet& a, const NodeSet& b) {
    std::size_t n = 0;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

Graph Graph::from_edges(std::size_t node_count,
                        const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::vector<NodeId>> adj(node_count);
    for (auto [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        adj[u].push_back(v);
        if (u != v) adj[v].push_back(u);
    }

    Graph g;
    g.offsets_.assign(node_count + 1, 0);
    for (std::size_t v = 0; v < node_count; ++v) {
        auto& nb = adj[v];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        g.offsets_[v + 1] = g.offsets_[v] + nb.size();
    }
    g.neighbors_.reserve(g.offsets_[node_count]);
    for (std::size_t v = 0; v < node_count; ++v) {
        for (NodeId u : adj[v]) {
            g.neighbors_.push_back(u);
            if (u == static_cast<NodeId>(v)) ++g.loop_edges_;
        }
    }
    g.nonloop_edges_ = (g.neighbors_.size() - g.loop_edges_) / 2;
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::int64_t Graph::original_id(NodeId v) const {
    if (original_ids_.empty()) return static_cast<std::int64_t>(v);
    return original_ids_[v];
}

std::optional<NodeId> Graph::dense_id(std::int64_t original) const {
    if (original_ids_.empty()) {
        if (original < 0 || static_cast<std::size_t>(original) >= node_count())
            return std::nullopt;
        return static_cast<NodeId>(original);
    }
    auto it = dense_ids_.find(original);
    if (it == dense_ids_.end()) return std::nullopt;
    return it->second;
}

void Graph::set_id_map(std::vector<std::int64_t> original_ids) {
    if (original_ids.size() != node_count())
        throw std::invalid_argument("id map size does not match node count");
    original_ids_ = std::move(original_ids);
    dense_ids_.clear();
    dense_ids_.reserve(original_ids_.size());
    for (std::size_t v = 0; v < original_ids_.size(); ++v)
        dense_ids_.emplace(original_ids_[v], static_cast<NodeId>(v));
}

namespace {

// Splits a line into integer tokens; returns false on any non-integer token.
bool parse_ids(const std::string& line, std::vector<std::int64_t>& out) {
    out.clear();
    const char* p = line.data();
    const char* end = p + line.size();
    while (p != end) {
        while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p == end) break;
        std::int64_t value = 0;
        auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc() || (next != end && *next != ' ' && *next != '\t' && *next != '\r'))
            return false;
        out.push_back(value);
        p = next;
    }
    return true;
}

bool blank_or_comment(const std::string& line, bool treat_hash_as_comment) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return treat_hash_as_comment && c == '#';
    }
    return true;
}

}  // namespace

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open edge list: " + path);

    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::int64_t> original_ids;
    std::unordered_map<std::int64_t, NodeId> dense;
    auto intern = [&](std::int64_t id) {
        auto [it, inserted] = dense.emplace(id, static_cast<NodeId>(original_ids.size()));
        if (inserted) original_ids.push_back(id);
        return it->second;
    };

    std::string line;
    std::vector<std::int64_t> tokens;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_or_comment(line, true)) continue;
        if (!parse_ids(line, tokens) || tokens.size() != 2)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected two integer ids");
        if (tokens[0] < 0 || tokens[1] < 0)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": negative node id");
        NodeId u = intern(tokens[0]);  // sequenced: ids densify left to right
        NodeId v = intern(tokens[1]);
        edges.emplace_back(u, v);
    }

    Graph g = Graph::from_edges(original_ids.size(), edges);
    g.set_id_map(std::move(original_ids));
    return g;
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (NodeId u : g.neighbors(v)) {
            if (u < v) continue;  // each undirected edge once, loops included
            out << g.original_id(v) << ' ' << g.original_id(u) << '\n';
        }
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

CommunitySet load_communities(const Graph& g, const std::string& path,
                              std::size_t max_count) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open community file: " + path);

    CommunitySet result;
    std::string line;
    std::vector<std::int64_t> tokens;
    std::size_t line_no = 0;
    while (result.communities.size() < max_count && std::getline(in, line)) {
        ++line_no;
        if (blank_or_comment(line, false)) {
            ++result.skipped_empty_lines;
            continue;
        }
        if (!parse_ids(line, tokens))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed community line");
        std::vector<NodeId> members;
        members.reserve(tokens.size());
        for (std::int64_t id : tokens) {
            auto dense = g.dense_id(id);
            if (!dense)
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": node id " + std::to_string(id) +
                                         " not present in graph");
            members.push_back(*dense);
        }
        result.communities.emplace_back(std::move(members));
    }
    return result;
}

NodeSet nodes_within_distance(const Graph& g, const NodeSet& c, std::size_t l) {
    std::vector<NodeId> reached;
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::deque<std::pair<NodeId, std::size_t>> queue;
    for (NodeId v : c) {
        seen[v] = 1;
        reached.push_back(v);
        queue.emplace_back(v, 0);
    }
    while (!queue.empty()) {
        auto [v, dist] = queue.front();
        queue.pop_front();
        if (dist == l) continue;
        for (NodeId u : g.neighbors(v)) {
            if (seen[u]) continue;
            seen[u] = 1;
            reached.push_back(u);
            queue.emplace_back(u, dist + 1);
        }
    }
    return NodeSet(std::move(reached));
}

}  // namespace walkscan
