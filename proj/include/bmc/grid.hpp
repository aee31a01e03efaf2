#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <bmc/graph.hpp>

namespace bmc {

enum class Cell : unsigned char { Free, Obstacle };

/// 0-based from the top-left corner.
struct Coord {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Occupancy grid with optional source/destination markers.
/// Markers always sit on free cells.
struct GridMap {
    int width = 0;
    int height = 0;
    std::vector<Cell> cells; // row-major, height*width
    std::vector<Coord> sources;
    std::vector<Coord> destinations;

    bool in_bounds(Coord c) const {
        return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
    }

    Cell at(Coord c) const {
        return cells[static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width) + c.col];
    }

    Cell& at(Coord c) {
        return cells[static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width) + c.col];
    }

    int free_cell_count() const {
        int count = 0;
        for (Cell cell : cells) count += (cell == Cell::Free);
        return count;
    }
};

/// Adds a marker supplied outside the grid file (CLI coordinates).
inline void add_source(GridMap& m, Coord c) {
    if (!m.in_bounds(c))
        fail(ErrorCode::InvalidParameter,
             "source " + std::to_string(c.row) + "," + std::to_string(c.col) + " outside grid");
    if (m.at(c) != Cell::Free)
        fail(ErrorCode::InvalidParameter, "source " + std::to_string(c.row) + "," +
                                              std::to_string(c.col) + " is an obstacle cell");
    m.sources.push_back(c);
}

inline void add_destination(GridMap& m, Coord c) {
    if (!m.in_bounds(c))
        fail(ErrorCode::InvalidParameter,
             "destination " + std::to_string(c.row) + "," + std::to_string(c.col) +
                 " outside grid");
    if (m.at(c) != Cell::Free)
        fail(ErrorCode::InvalidParameter, "destination " + std::to_string(c.row) + "," +
                                              std::to_string(c.col) + " is an obstacle cell");
    m.destinations.push_back(c);
}

/// Grid alphabet: '#' obstacle, '.' free, 'S' source, 'D' destination.
inline GridMap parse_ascii_grid(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = eol + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) fail(ErrorCode::RaggedRows, "empty grid");

    GridMap m;
    m.height = static_cast<int>(lines.size());
    m.width = static_cast<int>(lines.front().size());
    if (m.width == 0) fail(ErrorCode::RaggedRows, "empty first row");
    m.cells.reserve(static_cast<std::size_t>(m.height) * m.width);
    for (int r = 0; r < m.height; ++r) {
        if (static_cast<int>(lines[r].size()) != m.width)
            fail(ErrorCode::RaggedRows, "row " + std::to_string(r) + " has " +
                                            std::to_string(lines[r].size()) + " cells, expected " +
                                            std::to_string(m.width));
        for (int c = 0; c < m.width; ++c) {
            switch (lines[r][c]) {
                case '#': m.cells.push_back(Cell::Obstacle); break;
                case '.': m.cells.push_back(Cell::Free); break;
                case 'S':
                    m.cells.push_back(Cell::Free);
                    m.sources.push_back({r, c});
                    break;
                case 'D':
                    m.cells.push_back(Cell::Free);
                    m.destinations.push_back({r, c});
                    break;
                default:
                    fail(ErrorCode::UnknownCharacter, std::string("'") + lines[r][c] + "' at row " +
                                                          std::to_string(r) + " col " +
                                                          std::to_string(c));
            }
        }
    }
    return m;
}

/// Inverse of parse_ascii_grid. A cell that is both source and
/// destination is written as 'D'.
inline std::string serialize_ascii_grid(const GridMap& m) {
    std::string out;
    out.reserve(static_cast<std::size_t>(m.height) * (m.width + 1));
    std::vector<char> marks(m.cells.size(), 0);
    for (Coord c : m.sources)
        marks[static_cast<std::size_t>(c.row) * m.width + c.col] = 'S';
    for (Coord c : m.destinations)
        marks[static_cast<std::size_t>(c.row) * m.width + c.col] = 'D';
    for (int r = 0; r < m.height; ++r) {
        for (int c = 0; c < m.width; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * m.width + c;
            if (marks[idx] != 0)
                out += marks[idx];
            else
                out += m.cells[idx] == Cell::Obstacle ? '#' : '.';
        }
        out += '\n';
    }
    return out;
}

enum class Connectivity { Four, Eight };

/// Bijection between the free cells and the nodes of the induced graph.
/// Free cells are numbered row-major starting at 1; side neighbors get
/// weight 1 and (under eight-connectivity) diagonal neighbors sqrt(2).
struct GridGraphMapping {
    WeightedGraph graph;
    std::vector<Coord> cell_of_node; // [node-1]
    std::vector<int> node_of_cell;   // row-major, 0 for obstacles
    std::vector<int> leaders;        // nodes of destination cells, ascending

    int node_at(Coord c) const {
        return node_of_cell[static_cast<std::size_t>(c.row) * width + c.col];
    }

    int width = 0;
    int height = 0;
};

/// Builds the free-cell graph. Destination cells become the leader set.
/// Connectivity of the free region is deliberately not checked here; the
/// dynamics rejects disconnected graphs when a run starts.
inline GridGraphMapping grid_to_graph(const GridMap& m, Connectivity connectivity) {
    GridGraphMapping mapping;
    mapping.width = m.width;
    mapping.height = m.height;
    mapping.node_of_cell.assign(m.cells.size(), 0);

    int next_id = 1;
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c)
            if (m.at({r, c}) == Cell::Free) {
                mapping.node_of_cell[static_cast<std::size_t>(r) * m.width + c] = next_id++;
                mapping.cell_of_node.push_back({r, c});
            }
    const int n = next_id - 1;
    if (n == 0) fail(ErrorCode::NoFreeCells, "grid has no free cells");

    // Scan east/south(/south-east/south-west) so each edge appears once.
    std::vector<EdgeSpec> edges;
    auto link = [&](Coord a, Coord b, double w) {
        if (!m.in_bounds(b) || m.at(b) != Cell::Free) return;
        edges.push_back({mapping.node_at(a), mapping.node_at(b), w});
    };
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            if (m.at({r, c}) != Cell::Free) continue;
            link({r, c}, {r, c + 1}, 1.0);
            link({r, c}, {r + 1, c}, 1.0);
            if (connectivity == Connectivity::Eight) {
                link({r, c}, {r + 1, c + 1}, std::numbers::sqrt2);
                link({r, c}, {r + 1, c - 1}, std::numbers::sqrt2);
            }
        }
    mapping.graph = build_graph(n, edges);

    for (Coord c : m.destinations) {
        const int id = mapping.node_at(c);
        if (id == 0)
            fail(ErrorCode::InvalidParameter, "destination on obstacle cell");
        mapping.leaders.push_back(id);
    }
    std::sort(mapping.leaders.begin(), mapping.leaders.end());
    mapping.leaders.erase(std::unique(mapping.leaders.begin(), mapping.leaders.end()),
                          mapping.leaders.end());
    return mapping;
}

} // namespace bmc
