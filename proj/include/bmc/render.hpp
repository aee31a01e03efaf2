#pragma once

#include <cmath>
#include <string>

#include <bmc/dynamics.hpp>
#include <bmc/grid.hpp>
#include <bmc/numeric_io.hpp>
#include <bmc/path.hpp>
#include <bmc/pgm.hpp>

namespace bmc {

namespace detail {

inline void check_field(const GridMap& m, const GridGraphMapping& mapping,
                        const StateVector& s) {
    if (m.width != mapping.width || m.height != mapping.height)
        fail(ErrorCode::LengthMismatch, "mapping does not belong to this grid");
    if (s.values.size() != mapping.cell_of_node.size())
        fail(ErrorCode::LengthMismatch, "state length does not match free-cell count");
}

} // namespace detail

/// One `row,col,x` line per free cell, row-major.
inline std::string render_field_csv(const GridMap& m, const GridGraphMapping& mapping,
                                    const StateVector& s) {
    detail::check_field(m, mapping, s);
    std::string out;
    for (std::size_t idx = 0; idx < mapping.cell_of_node.size(); ++idx) {
        const Coord c = mapping.cell_of_node[idx];
        out += std::to_string(c.row) + ',' + std::to_string(c.col) + ',' +
               format_double(s.values[idx]) + '\n';
    }
    return out;
}

/// State field as a P2 image: free-cell values affinely rescaled to
/// 0..255, obstacles black. A constant field renders as 255.
inline std::string render_field_pgm(const GridMap& m, const GridGraphMapping& mapping,
                                    const StateVector& s) {
    detail::check_field(m, mapping, s);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : s.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    PgmImage img;
    img.width = m.width;
    img.height = m.height;
    img.pixels.assign(m.cells.size(), 0);
    for (std::size_t idx = 0; idx < mapping.cell_of_node.size(); ++idx) {
        const Coord c = mapping.cell_of_node[idx];
        const double v = s.values[idx];
        const int gray = hi == lo ? 255 : static_cast<int>(std::lround(255.0 * (v - lo) / (hi - lo)));
        img.pixels[static_cast<std::size_t>(c.row) * m.width + c.col] =
            static_cast<std::uint8_t>(gray);
    }
    return write_pgm(img);
}

/// Path overlay: obstacles black, free cells white, path cells mid-gray.
inline std::string render_path_pgm(const GridMap& m, const GridGraphMapping& mapping,
                                   const Path& p) {
    PgmImage img;
    img.width = m.width;
    img.height = m.height;
    img.pixels.assign(m.cells.size(), 0);
    for (std::size_t idx = 0; idx < m.cells.size(); ++idx)
        if (m.cells[idx] == Cell::Free) img.pixels[idx] = 255;
    for (int node : p.nodes) {
        if (node < 1 || node > static_cast<int>(mapping.cell_of_node.size()))
            fail(ErrorCode::PathOffGrid, "path node " + std::to_string(node) + " has no cell");
        const Coord c = mapping.cell_of_node[node - 1];
        img.pixels[static_cast<std::size_t>(c.row) * m.width + c.col] = 128;
    }
    return write_pgm(img);
}

} // namespace bmc
