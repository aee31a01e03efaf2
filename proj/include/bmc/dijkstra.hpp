#pragma once

#include <limits>
#include <queue>
#include <vector>

#include <bmc/dynamics.hpp>
#include <bmc/graph.hpp>

namespace bmc {

/// Exact shortest distance from each node to its nearest leader.
/// dist is 0 on leaders and satisfies x_i = min_j{x_j + w_ij} elsewhere.
struct DistanceMap {
    std::vector<double> dist;

    double at(int node_id) const { return dist[static_cast<std::size_t>(node_id) - 1]; }
};

/// Multi-destination Dijkstra: a virtual super-source attached to every
/// leader with zero offset, so one run covers all destinations. Ties in
/// the heap pop in node-id order for determinism.
inline DistanceMap dijkstra_multi_source(const WeightedGraph& g, const std::vector<int>& leaders) {
    if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "at least one leader required");
    const int n = g.node_count();

    DistanceMap map;
    map.dist.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());

    using Item = std::pair<double, int>; // (distance, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (int id : leaders) {
        g.check_node(id);
        if (map.dist[id - 1] != 0.0) {
            map.dist[id - 1] = 0.0;
            heap.push({0.0, id});
        }
    }

    int settled = 0;
    while (!heap.empty()) {
        auto [d, i] = heap.top();
        heap.pop();
        if (d > map.dist[i - 1]) continue; // stale entry
        ++settled;
        for (const Edge& e : g.neighbors(i)) {
            const double cand = d + e.weight;
            if (cand < map.dist[e.to - 1]) {
                map.dist[e.to - 1] = cand;
                heap.push({cand, e.to});
            }
        }
    }
    if (settled != n) fail(ErrorCode::NotConnected, "unreachable nodes exist");
    return map;
}

struct VerifyReport {
    double max_abs_err = 0.0;
    int worst_node = 0;
    bool pass = false;
};

/// Compares an equilibrium state against the oracle distances.
inline VerifyReport verify_equilibrium(const StateVector& s_eq, const DistanceMap& d,
                                       double tol_verify) {
    if (s_eq.values.size() != d.dist.size())
        fail(ErrorCode::LengthMismatch, "state and distance map sizes differ");
    VerifyReport report;
    report.worst_node = 1;
    for (std::size_t idx = 0; idx < d.dist.size(); ++idx) {
        const double err = std::abs(s_eq.values[idx] - d.dist[idx]);
        if (err > report.max_abs_err) {
            report.max_abs_err = err;
            report.worst_node = static_cast<int>(idx) + 1;
        }
    }
    report.pass = report.max_abs_err <= tol_verify;
    return report;
}

} // namespace bmc
