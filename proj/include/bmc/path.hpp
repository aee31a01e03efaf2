#pragma once

#include <algorithm>
#include <vector>

#include <bmc/dynamics.hpp>
#include <bmc/graph.hpp>

namespace bmc {

/// A walk from a source node to a leader; length is the sum of the
/// traversed edge weights. At an equilibrium with zero-valued leaders the
/// length equals the source's state value.
struct Path {
    std::vector<int> nodes;
    double length = 0.0;

    friend bool operator==(const Path&, const Path&) = default;
};

enum class TieBreak { LowestId, All };

struct PathOptions {
    double tol = 1e-9;                        // convergence check on the state
    std::size_t enumeration_cap = 1'000'000;  // for TieBreak::All
    // Parents are accepted within 10*tol of the exact minimum so floating
    // noise cannot drop a genuinely tied parent.
    double parent_tol() const { return 10.0 * tol; }
};

/// All shortest-path parent edges at equilibrium: parents[i-1] is the
/// ascending arg-set of min_{j in N(i)}{x_j + w_ij}, empty for leaders.
/// Acyclic, and every maximal parent walk ends at a leader.
struct ShortestPathDag {
    std::vector<std::vector<int>> parents;

    const std::vector<int>& parents_of(int node_id) const {
        return parents[static_cast<std::size_t>(node_id) - 1];
    }
};

namespace detail {

inline void check_converged(const WeightedGraph& g, const RoleAssignment& roles,
                            const StateVector& s, double tol) {
    const ResidualDiagnostics d = diagnostics(g, roles, s);
    if (d.max_abs() > tol)
        fail(ErrorCode::NotConverged, "state residual " + std::to_string(d.max_abs()) +
                                          " exceeds tol " + std::to_string(tol));
}

inline std::vector<int> tolerant_parents(const WeightedGraph& g, const RoleAssignment& roles,
                                         const StateVector& s, int i, double parent_tol) {
    if (roles.is_leader(i)) return {};
    double m = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.neighbors(i)) m = std::min(m, s.values[e.to - 1] + e.weight);
    std::vector<int> parents;
    for (const Edge& e : g.neighbors(i))
        if (s.values[e.to - 1] + e.weight <= m + parent_tol) parents.push_back(e.to);
    return parents;
}

inline double edge_weight(const WeightedGraph& g, int i, int j) {
    for (const Edge& e : g.neighbors(i))
        if (e.to == j) return e.weight;
    fail(ErrorCode::NodeIdOutOfRange,
         "no edge (" + std::to_string(i) + ";" + std::to_string(j) + ")");
}

inline double path_length(const WeightedGraph& g, const std::vector<int>& nodes) {
    double length = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
        length += edge_weight(g, nodes[k], nodes[k + 1]);
    return length;
}

} // namespace detail

/// Recursive parent chase from `source`, taking the lowest-id parent at
/// every tie. A leader source yields the trivial single-node path.
inline Path extract_path(const WeightedGraph& g, const RoleAssignment& roles,
                         const StateVector& s_eq, int source, const PathOptions& opt = {}) {
    g.check_node(source);
    detail::check_converged(g, roles, s_eq, opt.tol);

    Path path;
    path.nodes.push_back(source);
    int current = source;
    while (!roles.is_leader(current)) {
        const std::vector<int> parents =
            detail::tolerant_parents(g, roles, s_eq, current, opt.parent_tol());
        const int next = parents.front(); // nonempty: connected graph, follower
        path.length += detail::edge_weight(g, current, next);
        path.nodes.push_back(next);
        current = next;
        if (path.nodes.size() > static_cast<std::size_t>(g.node_count()))
            fail(ErrorCode::CycleDetected,
                 "parent chain does not reach a leader; tolerance misconfigured?");
    }
    return path;
}

/// Enumerates every distinct shortest path from `source`, in lexicographic
/// node order. Throws once the count would exceed opt.enumeration_cap.
inline std::vector<Path> extract_all_paths(const WeightedGraph& g, const RoleAssignment& roles,
                                           const StateVector& s_eq, int source,
                                           const PathOptions& opt = {}) {
    g.check_node(source);
    detail::check_converged(g, roles, s_eq, opt.tol);

    std::vector<Path> out;
    std::vector<int> prefix{source};

    // Iterative DFS over the parent DAG; parents are ascending so paths
    // come out lexicographically sorted.
    struct Frame {
        std::vector<int> parents;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    auto frame_for = [&](int node) {
        return Frame{detail::tolerant_parents(g, roles, s_eq, node, opt.parent_tol()), 0};
    };
    stack.push_back(frame_for(source));

    while (!stack.empty()) {
        Frame& top = stack.back();
        if (roles.is_leader(prefix.back())) {
            if (out.size() == opt.enumeration_cap)
                fail(ErrorCode::EnumerationCapExceeded,
                     "more than " + std::to_string(opt.enumeration_cap) + " shortest paths");
            out.push_back({prefix, detail::path_length(g, prefix)});
            stack.pop_back();
            prefix.pop_back();
            continue;
        }
        if (top.next == top.parents.size()) {
            stack.pop_back();
            prefix.pop_back();
            continue;
        }
        if (prefix.size() > static_cast<std::size_t>(g.node_count()))
            fail(ErrorCode::CycleDetected,
                 "parent chain does not reach a leader; tolerance misconfigured?");
        const int child = top.parents[top.next++];
        prefix.push_back(child);
        stack.push_back(frame_for(child));
    }
    return out;
}

/// Parent arg-sets of every node at equilibrium, verified acyclic.
inline ShortestPathDag build_dag(const WeightedGraph& g, const RoleAssignment& roles,
                                 const StateVector& s_eq, const PathOptions& opt = {}) {
    detail::check_converged(g, roles, s_eq, opt.tol);
    const int n = g.node_count();

    ShortestPathDag dag;
    dag.parents.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        dag.parents[i - 1] = detail::tolerant_parents(g, roles, s_eq, i, opt.parent_tol());

    // Cycles cannot occur at a true equilibrium (each parent hop strictly
    // decreases x by w > parent_tol); finding one means the state or the
    // tolerances are inconsistent.
    std::vector<char> color(static_cast<std::size_t>(n) + 1, 0); // 0 new, 1 open, 2 done
    std::vector<std::pair<int, std::size_t>> stack;
    for (int start = 1; start <= n; ++start) {
        if (color[start] != 0) continue;
        color[start] = 1;
        stack.push_back({start, 0});
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            const auto& ps = dag.parents[node - 1];
            if (idx == ps.size()) {
                color[node] = 2;
                stack.pop_back();
                continue;
            }
            const int next = ps[idx++];
            if (color[next] == 1)
                fail(ErrorCode::CycleDetected, "parent relation has a cycle through node " +
                                                   std::to_string(next));
            if (color[next] == 0) {
                color[next] = 1;
                stack.push_back({next, 0});
            }
        }
    }
    return dag;
}

} // namespace bmc
