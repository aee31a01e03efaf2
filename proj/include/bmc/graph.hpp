#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include <bmc/error.hpp>

namespace bmc {

/// One endpoint of an undirected edge as seen from a fixed node.
struct Edge {
    int to;
    double weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected edge in caller coordinates, used to build a graph.
struct EdgeSpec {
    int i;
    int j;
    double weight;
};

/// Immutable weighted undirected graph over nodes 1..n.
///
/// Adjacency is stored compressed and sorted by neighbor id, so two graphs
/// built from the same edge set compare equal regardless of input order.
/// Weights are strictly positive and finite; self-loops and duplicate
/// unordered pairs are rejected at construction.
class WeightedGraph {
public:
    WeightedGraph() = default;

    int node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return adj_.size() / 2; }

    /// Largest edge weight, 0 for an edgeless graph.
    double max_weight() const noexcept { return max_weight_; }

    std::span<const Edge> neighbors(int i) const {
        check_node(i);
        return {adj_.data() + offsets_[i - 1], adj_.data() + offsets_[i]};
    }

    std::size_t degree(int i) const {
        check_node(i);
        return offsets_[i] - offsets_[i - 1];
    }

    void check_node(int i) const {
        if (i < 1 || i > n_)
            fail(ErrorCode::NodeIdOutOfRange,
                 "node " + std::to_string(i) + " outside 1.." + std::to_string(n_));
    }

    /// Visits every undirected edge once, with i < j.
    template <typename F>
    void for_each_edge(F&& f) const {
        for (int i = 1; i <= n_; ++i)
            for (const Edge& e : neighbors(i))
                if (i < e.to) f(i, e.to, e.weight);
    }

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

    friend WeightedGraph build_graph(int n, std::span<const EdgeSpec> edges);

private:
    int n_ = 0;
    std::vector<std::size_t> offsets_; // size n_+1
    std::vector<Edge> adj_;            // both directions, sorted per node
    double max_weight_ = 0.0;
};

inline WeightedGraph build_graph(int n, std::span<const EdgeSpec> edges) {
    if (n < 1) fail(ErrorCode::InvalidParameter, "node count must be positive");

    WeightedGraph g;
    g.n_ = n;

    std::vector<std::size_t> deg(static_cast<std::size_t>(n) + 1, 0);
    for (const EdgeSpec& e : edges) {
        if (e.i < 1 || e.i > n || e.j < 1 || e.j > n)
            fail(ErrorCode::NodeIdOutOfRange,
                 "edge (" + std::to_string(e.i) + ";" + std::to_string(e.j) + ")");
        if (e.i == e.j)
            fail(ErrorCode::SelfLoop, "edge (" + std::to_string(e.i) + ";" + std::to_string(e.i) + ")");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            fail(ErrorCode::NonPositiveWeight,
                 "edge (" + std::to_string(e.i) + ";" + std::to_string(e.j) +
                     ") weight must be positive and finite");
        ++deg[static_cast<std::size_t>(e.i)];
        ++deg[static_cast<std::size_t>(e.j)];
        g.max_weight_ = std::max(g.max_weight_, e.weight);
    }

    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) g.offsets_[i] = g.offsets_[i - 1] + deg[i];
    g.adj_.resize(g.offsets_[n]);

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const EdgeSpec& e : edges) {
        g.adj_[cursor[e.i - 1]++] = {e.j, e.weight};
        g.adj_[cursor[e.j - 1]++] = {e.i, e.weight};
    }

    for (int i = 1; i <= n; ++i) {
        auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i - 1]);
        auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
        std::sort(begin, end, [](const Edge& a, const Edge& b) { return a.to < b.to; });
        for (auto it = begin; it != end && it + 1 != end; ++it)
            if (it->to == (it + 1)->to)
                fail(ErrorCode::DuplicateEdge,
                     "edge (" + std::to_string(i) + ";" + std::to_string(it->to) + ") given twice");
    }
    return g;
}

inline WeightedGraph build_graph(int n, std::initializer_list<EdgeSpec> edges) {
    return build_graph(n, std::span<const EdgeSpec>(edges.begin(), edges.size()));
}

/// True iff every node is reachable from node 1.
inline bool validate_connected(const WeightedGraph& g) {
    const int n = g.node_count();
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (const Edge& e : g.neighbors(i)) {
            if (!seen[e.to]) {
                seen[e.to] = 1;
                ++reached;
                stack.push_back(e.to);
            }
        }
    }
    return reached == n;
}

/// Partition of the nodes into static leaders and dynamic followers.
/// Leaders anchor the dynamics; the set must be nonempty.
class RoleAssignment {
public:
    const std::vector<int>& leaders() const noexcept { return leaders_; }
    const std::vector<int>& followers() const noexcept { return followers_; }

    bool is_leader(int i) const { return mask_[static_cast<std::size_t>(i)] != 0; }

    int node_count() const noexcept { return static_cast<int>(mask_.size()) - 1; }

    friend RoleAssignment assign_roles(const WeightedGraph& g, std::vector<int> leaders);

private:
    std::vector<int> leaders_;   // sorted ascending
    std::vector<int> followers_; // sorted ascending
    std::vector<char> mask_;     // index 1..n
};

inline RoleAssignment assign_roles(const WeightedGraph& g, std::vector<int> leaders) {
    if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "at least one leader required");
    const int n = g.node_count();

    RoleAssignment roles;
    roles.mask_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int id : leaders) {
        g.check_node(id);
        roles.mask_[static_cast<std::size_t>(id)] = 1;
    }
    std::sort(leaders.begin(), leaders.end());
    leaders.erase(std::unique(leaders.begin(), leaders.end()), leaders.end());
    roles.leaders_ = std::move(leaders);
    roles.followers_.reserve(static_cast<std::size_t>(n) - roles.leaders_.size());
    for (int i = 1; i <= n; ++i)
        if (!roles.is_leader(i)) roles.followers_.push_back(i);
    return roles;
}

} // namespace bmc
