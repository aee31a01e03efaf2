#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include <bmc/graph.hpp>
#include <bmc/rng.hpp>

namespace bmc {

/// Per-node scalar state at one simulation instant.
/// values[i-1] is the state of node i; units match the edge weights.
struct StateVector {
    std::vector<double> values;
    double time = 0.0;

    double value(int node_id) const { return values[static_cast<std::size_t>(node_id) - 1]; }
};

/// The right-hand side of the follower dynamics evaluated at one state:
/// e_i = min_{j in N(i)}{x_j + w_ij} - x_i for followers, e_i = 0 for
/// leaders, together with its extremes and their arg-sets.
struct ResidualDiagnostics {
    std::vector<double> residuals;
    double upper = 0.0;          // max_i e_i
    double lower = 0.0;          // min_i e_i
    std::vector<int> upper_set;  // {i : e_i == upper}, ascending
    std::vector<int> lower_set;  // {i : e_i == lower}, ascending

    double max_abs() const { return std::max(std::abs(upper), std::abs(lower)); }
};

struct SimulationParams {
    double epsilon = 1e-4;    // protocol gain
    double step = 0.0;        // integration step h; 0 means h = epsilon
    double tol = 1e-9;        // stop when max_i |e_i| <= tol
    std::int64_t max_steps = 10'000'000;
    int snapshot_stride = 0;  // 0: every step for n <= 1000, else every 100
    int workers = 1;
    bool zero_bias = false;   // test hook: drop w_ij from the RHS (plain min-consensus)

    double resolved_step() const { return step == 0.0 ? epsilon : step; }

    void validate() const {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon))
            fail(ErrorCode::InvalidParameter, "epsilon must be positive");
        const double h = resolved_step();
        if (!(h > 0.0) || !std::isfinite(h))
            fail(ErrorCode::InvalidParameter, "step must be positive");
        if (h > epsilon)
            fail(ErrorCode::InvalidParameter, "step must not exceed epsilon");
        if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tol must be positive");
        if (max_steps < 0) fail(ErrorCode::InvalidParameter, "max_steps must be nonnegative");
        if (snapshot_stride < 0) fail(ErrorCode::InvalidParameter, "snapshot_stride must be nonnegative");
        if (workers < 1) fail(ErrorCode::InvalidParameter, "workers must be at least 1");
    }

    int effective_stride(int node_count) const {
        if (snapshot_stride > 0) return snapshot_stride;
        return node_count <= 1000 ? 1 : 100;
    }
};

struct InitPolicy {
    enum class Kind { Zeros, UniformRandom, Explicit };

    Kind kind = Kind::Zeros;
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> values;

    static InitPolicy zeros() { return {}; }

    static InitPolicy uniform_random(double lo, double hi, std::uint64_t seed) {
        InitPolicy p;
        p.kind = Kind::UniformRandom;
        p.lo = lo;
        p.hi = hi;
        p.seed = seed;
        return p;
    }

    static InitPolicy explicit_values(std::vector<double> values) {
        InitPolicy p;
        p.kind = Kind::Explicit;
        p.values = std::move(values);
        return p;
    }
};

/// Default span for random initial states: [0, n * max_w] keeps the
/// transient interesting while the boundedness envelope stays loose.
inline std::pair<double, double> default_random_range(const WeightedGraph& g) {
    return {0.0, static_cast<double>(g.node_count()) * g.max_weight()};
}

/// Builds the initial state. Leaders are pinned to 0 under `zeros` and
/// `uniform_random` (the regime in which the equilibrium is the distance
/// field); `explicit_values` is taken verbatim so nonzero leader anchors
/// can be simulated too.
inline StateVector init_state(const WeightedGraph& g, const RoleAssignment& roles,
                              const InitPolicy& policy) {
    const int n = g.node_count();
    if (roles.node_count() != n)
        fail(ErrorCode::LengthMismatch, "role assignment does not match the graph");
    StateVector s;
    s.time = 0.0;
    switch (policy.kind) {
        case InitPolicy::Kind::Zeros:
            s.values.assign(static_cast<std::size_t>(n), 0.0);
            break;
        case InitPolicy::Kind::UniformRandom: {
            s.values.resize(static_cast<std::size_t>(n));
            std::mt19937_64 rng(policy.seed);
            for (int i = 1; i <= n; ++i)
                s.values[i - 1] = roles.is_leader(i) ? 0.0 : uniform_real(rng, policy.lo, policy.hi);
            break;
        }
        case InitPolicy::Kind::Explicit:
            if (static_cast<int>(policy.values.size()) != n)
                fail(ErrorCode::LengthMismatch,
                     "explicit init has " + std::to_string(policy.values.size()) +
                         " values for " + std::to_string(n) + " nodes");
            s.values = policy.values;
            break;
    }
    return s;
}

namespace detail {

struct ResidualStats {
    double upper = -std::numeric_limits<double>::infinity();
    double lower = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;

    void absorb(double e) {
        upper = std::max(upper, e);
        lower = std::min(lower, e);
        max_abs = std::max(max_abs, std::abs(e));
    }

    void merge(const ResidualStats& o) {
        upper = std::max(upper, o.upper);
        lower = std::min(lower, o.lower);
        max_abs = std::max(max_abs, o.max_abs);
    }
};

// Fills targets[i-1] = min_j{x_j + w_ij} (or x_i for leaders) and
// residuals[i-1] = e_i, for nodes first..last inclusive.
inline ResidualStats residual_range(const WeightedGraph& g, const RoleAssignment& roles,
                                    const std::vector<double>& x, std::vector<double>& targets,
                                    std::vector<double>& residuals, bool zero_bias, int first,
                                    int last) {
    ResidualStats stats;
    for (int i = first; i <= last; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i) - 1;
        if (roles.is_leader(i)) {
            targets[idx] = x[idx];
            residuals[idx] = 0.0;
        } else {
            double m = std::numeric_limits<double>::infinity();
            for (const Edge& e : g.neighbors(i)) {
                const double cand = zero_bias ? x[e.to - 1] : x[e.to - 1] + e.weight;
                m = std::min(m, cand);
            }
            targets[idx] = m;
            residuals[idx] = m - x[idx];
        }
        stats.absorb(residuals[idx]);
    }
    return stats;
}

// Synchronous evaluation of all residuals from a frozen state; the node
// range may be partitioned across workers arbitrarily.
inline ResidualStats compute_residuals(const WeightedGraph& g, const RoleAssignment& roles,
                                       const std::vector<double>& x, std::vector<double>& targets,
                                       std::vector<double>& residuals, bool zero_bias,
                                       int workers) {
    const int n = g.node_count();
    if (workers <= 1 || n < 2 * workers)
        return residual_range(g, roles, x, targets, residuals, zero_bias, 1, n);

    std::vector<ResidualStats> part(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 1; w < workers; ++w) {
        const int first = w * chunk + 1;
        const int last = std::min(n, (w + 1) * chunk);
        if (first > last) continue;
        pool.emplace_back([&, w, first, last] {
            part[static_cast<std::size_t>(w)] =
                residual_range(g, roles, x, targets, residuals, zero_bias, first, last);
        });
    }
    part[0] = residual_range(g, roles, x, targets, residuals, zero_bias, 1, std::min(n, chunk));
    for (std::thread& t : pool) t.join();

    ResidualStats stats;
    for (const ResidualStats& p : part) stats.merge(p);
    return stats;
}

inline ResidualDiagnostics make_diagnostics(std::vector<double> residuals,
                                            const ResidualStats& stats) {
    ResidualDiagnostics d;
    d.upper = stats.upper;
    d.lower = stats.lower;
    for (std::size_t idx = 0; idx < residuals.size(); ++idx) {
        if (residuals[idx] == d.upper) d.upper_set.push_back(static_cast<int>(idx) + 1);
        if (residuals[idx] == d.lower) d.lower_set.push_back(static_cast<int>(idx) + 1);
    }
    d.residuals = std::move(residuals);
    return d;
}

// Applies x <- x + (h/eps) e to followers. At h = eps the new value is the
// precomputed min target itself, so the Bellman relaxation is exact in
// floating point rather than x + (m - x).
inline void apply_update(const RoleAssignment& roles, std::vector<double>& x,
                         const std::vector<double>& targets, const std::vector<double>& residuals,
                         double gamma) {
    const int n = roles.node_count();
    if (gamma == 1.0) {
        for (int i = 1; i <= n; ++i)
            if (!roles.is_leader(i)) x[i - 1] = targets[i - 1];
    } else {
        for (int i = 1; i <= n; ++i)
            if (!roles.is_leader(i)) x[i - 1] += gamma * residuals[i - 1];
    }
    for (int i = 1; i <= n; ++i)
        if (!std::isfinite(x[i - 1]))
            fail(ErrorCode::NonFiniteState, "node " + std::to_string(i) + " left the finite range");
}

inline void check_state(const WeightedGraph& g, const StateVector& s) {
    if (static_cast<int>(s.values.size()) != g.node_count())
        fail(ErrorCode::LengthMismatch, "state has " + std::to_string(s.values.size()) +
                                            " values for " + std::to_string(g.node_count()) +
                                            " nodes");
}

inline void check_roles(const WeightedGraph& g, const RoleAssignment& roles) {
    if (roles.node_count() != g.node_count())
        fail(ErrorCode::LengthMismatch, "role assignment covers " +
                                            std::to_string(roles.node_count()) + " nodes, graph has " +
                                            std::to_string(g.node_count()));
}

} // namespace detail

/// e_i at one node: 0 for leaders, min_{j in N(i)}{x_j + w_ij} - x_i else.
inline double residual(const WeightedGraph& g, const RoleAssignment& roles, const StateVector& s,
                       int i) {
    g.check_node(i);
    detail::check_state(g, s);
    detail::check_roles(g, roles);
    if (roles.is_leader(i)) return 0.0;
    double m = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.neighbors(i)) m = std::min(m, s.values[e.to - 1] + e.weight);
    return m - s.values[i - 1];
}

inline ResidualDiagnostics diagnostics(const WeightedGraph& g, const RoleAssignment& roles,
                                       const StateVector& s) {
    detail::check_state(g, s);
    detail::check_roles(g, roles);
    const std::size_t n = s.values.size();
    std::vector<double> targets(n), residuals(n);
    auto stats = detail::compute_residuals(g, roles, s.values, targets, residuals, false, 1);
    return detail::make_diagnostics(std::move(residuals), stats);
}

/// Full argmin set {j in N(i) : x_j + w_ij minimal}; empty for leaders.
/// Minimality uses exact floating equality of the candidate sums.
inline std::vector<int> parent_set(const WeightedGraph& g, const RoleAssignment& roles,
                                   const StateVector& s, int i) {
    g.check_node(i);
    detail::check_state(g, s);
    detail::check_roles(g, roles);
    if (roles.is_leader(i)) return {};
    double m = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.neighbors(i)) m = std::min(m, s.values[e.to - 1] + e.weight);
    std::vector<int> parents;
    for (const Edge& e : g.neighbors(i))
        if (s.values[e.to - 1] + e.weight == m) parents.push_back(e.to);
    return parents;
}

/// {k : i in parent_set(k)}, the exact inverse relation.
inline std::vector<int> child_set(const WeightedGraph& g, const RoleAssignment& roles,
                                  const StateVector& s, int i) {
    g.check_node(i);
    std::vector<int> children;
    for (const Edge& e : g.neighbors(i)) {
        const std::vector<int> parents = parent_set(g, roles, s, e.to);
        for (int p : parents)
            if (p == i) {
                children.push_back(e.to);
                break;
            }
    }
    return children;
}

/// One synchronous step: every e_i is evaluated on the frozen input state,
/// then followers move by (h/eps) e_i and leaders stay.
inline StateVector step(const WeightedGraph& g, const RoleAssignment& roles, const StateVector& s,
                        const SimulationParams& params) {
    params.validate();
    detail::check_state(g, s);
    detail::check_roles(g, roles);
    const std::size_t n = s.values.size();
    std::vector<double> targets(n), residuals(n);
    detail::compute_residuals(g, roles, s.values, targets, residuals, params.zero_bias,
                              params.workers);
    StateVector next = s;
    detail::apply_update(roles, next.values, targets, residuals,
                         params.resolved_step() / params.epsilon);
    next.time = s.time + params.resolved_step();
    return next;
}

struct Trajectory {
    struct Snapshot {
        StateVector state;
        ResidualDiagnostics diag;
    };

    std::vector<Snapshot> snapshots;
    bool converged = false;
    std::int64_t steps_taken = 0;

    const StateVector& final_state() const { return snapshots.back().state; }
    const ResidualDiagnostics& final_diag() const { return snapshots.back().diag; }
};

/// Called once per step with the pre-step state and its diagnostics,
/// including the initial and final states.
using StepObserver = std::function<void(const StateVector&, const ResidualDiagnostics&)>;

/// Integrates to equilibrium: iterate until max_i |e_i| <= tol or
/// max_steps updates were applied. Snapshots are recorded every
/// effective_stride steps plus always the last evaluated state.
inline Trajectory run(const WeightedGraph& g, const RoleAssignment& roles, const StateVector& s0,
                      const SimulationParams& params, const StepObserver& observer = {}) {
    params.validate();
    detail::check_state(g, s0);
    detail::check_roles(g, roles);
    if (!validate_connected(g)) fail(ErrorCode::NotConnected, "dynamics requires a connected graph");

    const int n = g.node_count();
    const double h = params.resolved_step();
    const double gamma = h / params.epsilon;
    const int stride = params.effective_stride(n);

    StateVector x = s0;
    std::vector<double> targets(static_cast<std::size_t>(n)), residuals(static_cast<std::size_t>(n));

    Trajectory traj;
    std::int64_t k = 0;
    while (true) {
        x.time = static_cast<double>(k) * h;
        const auto stats = detail::compute_residuals(g, roles, x.values, targets, residuals,
                                                     params.zero_bias, params.workers);
        const bool stop = stats.max_abs <= params.tol || k >= params.max_steps;
        const bool record = (k % stride == 0) || stop;
        if (record || observer) {
            ResidualDiagnostics diag = detail::make_diagnostics(residuals, stats);
            if (observer) observer(x, diag);
            if (record) traj.snapshots.push_back({x, std::move(diag)});
        }
        if (stop) {
            traj.converged = stats.max_abs <= params.tol;
            traj.steps_taken = k;
            break;
        }
        detail::apply_update(roles, x.values, targets, residuals, gamma);
        ++k;
    }
    return traj;
}

} // namespace bmc
