#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here stays deliberately separate from the library's own algorithms so
// the checks cross-validate rather than echo the implementation.

#include <cstdint>
#include <limits>
#include <numeric>
#include <string_view>
#include <vector>

#include <bmc/graph.hpp>
#include <bmc/rng.hpp>

namespace bmc_test {

// --- union-find, the independent connectivity oracle ---

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n) + 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline bool connected_by_union_find(int n, const std::vector<bmc::EdgeSpec>& edges) {
    UnionFind uf(n);
    for (const auto& e : edges) uf.unite(e.i, e.j);
    for (int i = 2; i <= n; ++i)
        if (uf.find(i) != uf.find(1)) return false;
    return true;
}

// --- random edge sets (possibly disconnected) ---

inline std::vector<bmc::EdgeSpec> random_edge_set(std::mt19937_64& rng, int n, int tries) {
    std::vector<std::vector<char>> used(static_cast<std::size_t>(n) + 1,
                                        std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
    std::vector<bmc::EdgeSpec> edges;
    for (int k = 0; k < tries; ++k) {
        const int i = static_cast<int>(bmc::uniform_int(rng, 1, n));
        const int j = static_cast<int>(bmc::uniform_int(rng, 1, n));
        if (i == j || used[i][j]) continue;
        used[i][j] = used[j][i] = 1;
        edges.push_back({i, j, bmc::uniform_positive(rng, 10.0)});
    }
    return edges;
}

// --- brute-force shortest distance: enumerate all simple paths ---
// Exponential on purpose; only used on tiny graphs as the
// oracle-of-the-oracle.

inline double brute_force_distance(const bmc::WeightedGraph& g, const std::vector<int>& leaders,
                                   int source) {
    std::vector<char> is_leader(static_cast<std::size_t>(g.node_count()) + 1, 0);
    for (int id : leaders) is_leader[id] = 1;
    if (is_leader[source]) return 0.0;

    double best = std::numeric_limits<double>::infinity();
    std::vector<char> on_path(static_cast<std::size_t>(g.node_count()) + 1, 0);

    auto dfs = [&](auto&& self, int node, double acc) -> void {
        if (acc >= best) return;
        if (is_leader[node]) {
            best = acc;
            return;
        }
        on_path[node] = 1;
        for (const bmc::Edge& e : g.neighbors(node))
            if (!on_path[e.to]) self(self, e.to, acc + e.weight);
        on_path[node] = 0;
    };
    dfs(dfs, source, 0.0);
    return best;
}

// --- the 10-node illustrative fixture ---
// Destination node 1; node 10 has exactly two shortest paths, both through
// node 8: 10-8-3-6-5-1 and 10-8-9-4-6-5-1, each of length 6.

inline std::vector<bmc::EdgeSpec> ten_node_edges() {
    return {
        {1, 2, 1.0}, {1, 5, 1.0}, {2, 5, 3.0}, {2, 7, 2.0},
        {3, 6, 1.0}, {3, 8, 2.0}, {4, 6, 1.0}, {4, 7, 5.0},
        {4, 9, 1.0}, {5, 6, 1.0}, {8, 9, 1.0}, {8, 10, 1.0},
    };
}

inline bmc::WeightedGraph ten_node_graph() { return bmc::build_graph(10, ten_node_edges()); }

inline std::vector<double> ten_node_distances() {
    return {0.0, 1.0, 3.0, 3.0, 1.0, 2.0, 3.0, 5.0, 4.0, 6.0};
}

// --- FNV-1a over bytes, for pinning golden artifacts ---

inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace bmc_test
