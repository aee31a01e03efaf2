#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <bmc/graph.hpp>
#include <bmc/numeric_io.hpp>

namespace bmc {

/// Parsed edge-list file: `n m`, then `i j w` per edge, then
/// `leaders k` followed by k node ids. `#` starts a comment.
struct EdgeListFile {
    int node_count = 0;
    std::vector<EdgeSpec> edges;
    std::vector<int> leaders;

    WeightedGraph graph() const { return build_graph(node_count, edges); }
};

namespace detail {

// Strips comments and returns a whitespace-token stream.
inline std::istringstream decomment(std::istream& in) {
    std::string all, line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        all += line;
        all += '\n';
    }
    return std::istringstream(all);
}

template <typename T>
T next_token(std::istream& in, const char* what) {
    T v;
    if (!(in >> v)) fail(ErrorCode::ParseError, std::string("expected ") + what);
    return v;
}

} // namespace detail

inline EdgeListFile read_edge_list(std::istream& in) {
    std::istringstream tokens = detail::decomment(in);

    EdgeListFile file;
    file.node_count = detail::next_token<int>(tokens, "node count");
    const int m = detail::next_token<int>(tokens, "edge count");
    if (m < 0) fail(ErrorCode::ParseError, "negative edge count");

    file.edges.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        EdgeSpec e;
        e.i = detail::next_token<int>(tokens, "edge endpoint");
        e.j = detail::next_token<int>(tokens, "edge endpoint");
        e.weight = detail::next_token<double>(tokens, "edge weight");
        file.edges.push_back(e);
    }

    std::string keyword = detail::next_token<std::string>(tokens, "'leaders' line");
    if (keyword != "leaders") fail(ErrorCode::ParseError, "expected 'leaders', got '" + keyword + "'");
    const int k = detail::next_token<int>(tokens, "leader count");
    if (k < 0) fail(ErrorCode::ParseError, "negative leader count");
    for (int t = 0; t < k; ++t)
        file.leaders.push_back(detail::next_token<int>(tokens, "leader id"));
    return file;
}

inline EdgeListFile read_edge_list(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const WeightedGraph& g,
                            const std::vector<int>& leaders) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    g.for_each_edge([&](int i, int j, double w) {
        out << i << ' ' << j << ' ' << format_double(w) << '\n';
    });
    out << "leaders " << leaders.size() << '\n';
    for (std::size_t t = 0; t < leaders.size(); ++t)
        out << leaders[t] << (t + 1 == leaders.size() ? '\n' : ' ');
}

} // namespace bmc
