#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include <bmc/coverage.hpp>
#include <bmc/dijkstra.hpp>
#include <bmc/dynamics.hpp>
#include <bmc/numeric_io.hpp>
#include <bmc/path.hpp>

namespace bmc {

/// Streaming trajectory writer: header `t,x_1,...,x_n,e_upper,e_lower`,
/// then one row per observed snapshot. Usable directly as a StepObserver.
class TrajectoryCsvStream {
public:
    TrajectoryCsvStream(std::ostream& out, int node_count) : out_(out) {
        out_ << 't';
        for (int i = 1; i <= node_count; ++i) out_ << ",x_" << i;
        out_ << ",e_upper,e_lower\n";
    }

    void operator()(const StateVector& s, const ResidualDiagnostics& d) {
        out_ << format_double(s.time);
        for (double v : s.values) out_ << ',' << format_double(v);
        out_ << ',' << format_double(d.upper) << ',' << format_double(d.lower) << '\n';
    }

private:
    std::ostream& out_;
};

inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj, int node_count) {
    TrajectoryCsvStream stream(out, node_count);
    for (const Trajectory::Snapshot& snap : traj.snapshots) stream(snap.state, snap.diag);
}

/// One JSON object per step with the residual envelope and its arg-sets.
inline std::string diagnostics_json_line(const StateVector& s, const ResidualDiagnostics& d) {
    nlohmann::json j;
    j["t"] = s.time;
    j["e_upper"] = d.upper;
    j["e_lower"] = d.lower;
    j["upper_set"] = d.upper_set;
    j["lower_set"] = d.lower_set;
    return j.dump();
}

/// `<ids...>` on one line, then `length <value>`.
inline void write_path_text(std::ostream& out, const Path& p) {
    for (std::size_t k = 0; k < p.nodes.size(); ++k)
        out << p.nodes[k] << (k + 1 == p.nodes.size() ? '\n' : ' ');
    out << "length " << format_double(p.length) << '\n';
}

inline nlohmann::json path_json(const Path& p) {
    return nlohmann::json{{"nodes", p.nodes}, {"length", p.length}};
}

inline nlohmann::json verify_report_json(const VerifyReport& r) {
    return nlohmann::json{
        {"max_abs_err", r.max_abs_err}, {"worst_node", r.worst_node}, {"pass", r.pass}};
}

inline nlohmann::json coverage_report_json(const CoverageReport& r) {
    return nlohmann::json{{"covered", r.covered},
                          {"total", r.total},
                          {"revisits", r.revisits},
                          {"trace_length", r.trace_length},
                          {"complete", r.complete()}};
}

/// State file: one value per line, node order.
inline void write_state(std::ostream& out, const StateVector& s) {
    for (double v : s.values) out << format_double(v) << '\n';
}

inline StateVector read_state(std::istream& in) {
    StateVector s;
    double v = 0.0;
    while (in >> v) s.values.push_back(v);
    if (!in.eof() && in.fail()) fail(ErrorCode::ParseError, "bad value in state file");
    return s;
}

} // namespace bmc
