#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <bmc/grid.hpp>

namespace bmc {

struct PgmImage {
    int width = 0;
    int height = 0;
    int maxval = 255;
    std::vector<std::uint8_t> pixels; // row-major
};

namespace detail {

struct PgmCursor {
    std::string_view data;
    std::size_t pos = 0;

    // Skips whitespace and '#' comments (to end of line).
    void skip_separators() {
        while (pos < data.size()) {
            if (std::isspace(static_cast<unsigned char>(data[pos]))) {
                ++pos;
            } else if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    int next_int(const char* what) {
        skip_separators();
        if (pos >= data.size() || !std::isdigit(static_cast<unsigned char>(data[pos])))
            fail(ErrorCode::MalformedHeader, std::string("expected ") + what);
        long v = 0;
        while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
            v = v * 10 + (data[pos] - '0');
            if (v > 1'000'000'000) fail(ErrorCode::MalformedHeader, std::string(what) + " too large");
            ++pos;
        }
        return static_cast<int>(v);
    }
};

} // namespace detail

/// Reads P2 (ASCII) or P5 (binary) with maxval <= 255.
inline PgmImage parse_pgm_image(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        fail(ErrorCode::MalformedHeader, "not a P2/P5 PGM");
    const bool binary = bytes[1] == '5';

    detail::PgmCursor cur{bytes, 2};
    PgmImage img;
    img.width = cur.next_int("width");
    img.height = cur.next_int("height");
    img.maxval = cur.next_int("maxval");
    if (img.width <= 0 || img.height <= 0)
        fail(ErrorCode::MalformedHeader, "nonpositive dimensions");
    if (img.maxval <= 0 || img.maxval > 255)
        fail(ErrorCode::MalformedHeader, "maxval must be in 1..255");

    const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.reserve(count);
    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        if (cur.pos >= bytes.size() ||
            !std::isspace(static_cast<unsigned char>(bytes[cur.pos])))
            fail(ErrorCode::MalformedHeader, "missing raster separator");
        ++cur.pos;
        if (bytes.size() - cur.pos < count)
            fail(ErrorCode::TruncatedPayload, "raster shorter than width*height");
        for (std::size_t k = 0; k < count; ++k)
            img.pixels.push_back(static_cast<std::uint8_t>(bytes[cur.pos + k]));
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            cur.skip_separators();
            if (cur.pos >= bytes.size())
                fail(ErrorCode::TruncatedPayload, "raster shorter than width*height");
            const int v = cur.next_int("sample");
            if (v > img.maxval) fail(ErrorCode::MalformedHeader, "sample exceeds maxval");
            img.pixels.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return img;
}

/// Thresholded occupancy read: pixel < threshold is an obstacle, the rest
/// is free. Markers arrive separately (images carry none).
inline GridMap parse_pgm(std::string_view bytes, int threshold) {
    const PgmImage img = parse_pgm_image(bytes);
    GridMap m;
    m.width = img.width;
    m.height = img.height;
    m.cells.reserve(img.pixels.size());
    for (std::uint8_t p : img.pixels)
        m.cells.push_back(p < threshold ? Cell::Obstacle : Cell::Free);
    return m;
}

/// P2 writer; one raster row per text line.
inline std::string write_pgm(const PgmImage& img) {
    std::string out = "P2\n" + std::to_string(img.width) + ' ' + std::to_string(img.height) +
                      "\n" + std::to_string(img.maxval) + "\n";
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            if (c > 0) out += ' ';
            out += std::to_string(img.pixels[static_cast<std::size_t>(r) * img.width + c]);
        }
        out += '\n';
    }
    return out;
}

} // namespace bmc
