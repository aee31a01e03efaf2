#pragma once

#include <cstdint>
#include <vector>

#include <bmc/graph.hpp>
#include <bmc/rng.hpp>

namespace bmc {

/// A reproducible random connected instance: graph plus leader set.
struct RandomInstance {
    WeightedGraph graph;
    std::vector<int> leaders;
};

/// Random connected graph: a random attachment tree guarantees
/// connectivity, then up to 2n extra edges are sprinkled on top.
/// Weights are uniform in (0, w_hi]; leaders are 1-3 random nodes.
/// Fully determined by the seed.
inline RandomInstance random_connected_instance(std::uint64_t seed, int n_min = 5, int n_max = 100,
                                                double w_hi = 10.0) {
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(uniform_int(rng, n_min, n_max));

    std::vector<EdgeSpec> edges;
    std::vector<std::vector<char>> used(static_cast<std::size_t>(n) + 1,
                                        std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
    auto add = [&](int i, int j) {
        edges.push_back({i, j, uniform_positive(rng, w_hi)});
        used[i][j] = used[j][i] = 1;
    };

    for (int i = 2; i <= n; ++i) add(i, static_cast<int>(uniform_int(rng, 1, i - 1)));

    const int extra = static_cast<int>(uniform_int(rng, 0, 2 * n));
    for (int k = 0; k < extra; ++k) {
        const int i = static_cast<int>(uniform_int(rng, 1, n));
        const int j = static_cast<int>(uniform_int(rng, 1, n));
        if (i == j || used[i][j]) continue;
        add(i, j);
    }

    RandomInstance inst;
    inst.graph = build_graph(n, edges);
    const int leader_count = static_cast<int>(uniform_int(rng, 1, 3));
    std::vector<char> is_leader(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k < leader_count; ++k) {
        const int id = static_cast<int>(uniform_int(rng, 1, n));
        if (!is_leader[id]) {
            is_leader[id] = 1;
            inst.leaders.push_back(id);
        }
    }
    return inst;
}

} // namespace bmc
