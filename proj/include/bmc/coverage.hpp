#pragma once

#include <climits>
#include <vector>

#include <bmc/dynamics.hpp>
#include <bmc/grid.hpp>
#include <bmc/path.hpp>

namespace bmc {

/// Bookkeeping for complete coverage. Note the role reversal relative to
/// plain shortest-path solving: here the UNVISITED cells are the leaders
/// (pinned at 0) and the visited cells are the followers, so the
/// equilibrium field measures distance-to-nearest-unvisited.
struct CoverageState {
    std::vector<char> visited; // [node-1]
    int position = 0;
    int unvisited_count = 0;

    bool is_visited(int node) const { return visited[static_cast<std::size_t>(node) - 1] != 0; }

    /// Marks a node visited; returns true if it was unvisited.
    bool claim(int node) {
        char& flag = visited[static_cast<std::size_t>(node) - 1];
        if (flag) return false;
        flag = 1;
        --unvisited_count;
        return true;
    }
};

/// Every cell the robot occupies, in order, plus the per-leg paths.
struct CoveragePlan {
    std::vector<int> trace;
    std::vector<Path> segments;
};

/// Repeatedly routes the robot to the nearest unvisited cell until none
/// remain: (a) leaders := unvisited cells at state 0, (b) run the
/// consensus to equilibrium, (c) chase parents from the current position,
/// (d) move along the path, claiming every traversed cell. Consecutive
/// runs warm-start from the previous equilibrium; convergence is global
/// so correctness is unaffected and the restart is local.
inline CoveragePlan plan_coverage(const GridGraphMapping& mapping, int start,
                                  const SimulationParams& params) {
    const WeightedGraph& g = mapping.graph;
    g.check_node(start);
    if (!validate_connected(g))
        fail(ErrorCode::NotConnected, "free-cell subgraph is disconnected");
    params.validate();

    const int n = g.node_count();
    CoverageState state;
    state.visited.assign(static_cast<std::size_t>(n), 0);
    state.position = start;
    state.unvisited_count = n;
    state.claim(start);

    CoveragePlan plan;
    plan.trace.push_back(start);

    SimulationParams inner = params;
    inner.snapshot_stride = INT_MAX; // keep only the endpoints of each run

    StateVector field;
    field.values.assign(static_cast<std::size_t>(n), 0.0);

    PathOptions path_opt;
    path_opt.tol = inner.tol;

    while (state.unvisited_count > 0) {
        std::vector<int> leaders;
        leaders.reserve(static_cast<std::size_t>(state.unvisited_count));
        for (int i = 1; i <= n; ++i)
            if (!state.is_visited(i)) leaders.push_back(i);
        const RoleAssignment roles = assign_roles(g, leaders);

        field.time = 0.0;
        Trajectory traj = run(g, roles, field, inner);
        if (!traj.converged)
            fail(ErrorCode::NonConvergence,
                 "consensus did not converge within max_steps during coverage");
        field = traj.final_state();

        Path leg = extract_path(g, roles, field, state.position, path_opt);
        for (std::size_t k = 1; k < leg.nodes.size(); ++k) {
            plan.trace.push_back(leg.nodes[k]);
            state.claim(leg.nodes[k]);
        }
        state.position = leg.nodes.back();
        plan.segments.push_back(std::move(leg));
    }
    return plan;
}

struct CoverageReport {
    int covered = 0;
    int total = 0;
    int revisits = 0;
    std::size_t trace_length = 0;

    bool complete() const { return covered == total; }
};

inline CoverageReport coverage_report(const CoveragePlan& plan, const GridGraphMapping& mapping) {
    const int n = mapping.graph.node_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    CoverageReport report;
    report.total = n;
    report.trace_length = plan.trace.size();
    for (int node : plan.trace) {
        char& flag = seen[static_cast<std::size_t>(node) - 1];
        if (flag)
            ++report.revisits;
        else
            flag = 1;
    }
    for (char flag : seen) report.covered += flag;
    return report;
}

} // namespace bmc
