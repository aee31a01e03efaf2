#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include <bmc/error.hpp>

namespace bmc {

/// Shortest decimal form that round-trips the exact double.
/// Used by every text exporter so identical runs produce identical bytes.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail(ErrorCode::ParseError, "bad number '" + s + "'");
    return v;
}

} // namespace bmc
