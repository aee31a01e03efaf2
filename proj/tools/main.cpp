// Command-line front end: solve, maze, cover, verify, trace.
//
// Exit codes: 0 success, 1 I/O or parse errors, 2 disconnected input,
// 3 non-convergence, 4 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <bmc/bmc.hpp>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConnected = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitVerifyFailed = 4;

int exit_code_for(const bmc::Error& e) {
    switch (e.code()) {
        case bmc::ErrorCode::NotConnected: return kExitNotConnected;
        case bmc::ErrorCode::NonConvergence: return kExitNonConvergence;
        default: return kExitUsage;
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bmc::fail(bmc::ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Temp file in the target directory, then rename: interrupted runs never
// leave truncated artifacts behind.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) bmc::fail(bmc::ErrorCode::IoError, "cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) bmc::fail(bmc::ErrorCode::IoError, "cannot move " + tmp.string() + ": " + ec.message());
}

bmc::Coord parse_coord(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        bmc::fail(bmc::ErrorCode::ParseError, "expected r,c but got '" + text + "'");
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        bmc::fail(bmc::ErrorCode::ParseError, "expected r,c but got '" + text + "'");
    }
}

std::string frame_name(const std::string& prefix, const char* kind, long long index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%06lld", index);
    return prefix + "_" + kind + "_" + buf + ".pgm";
}

struct CommonOptions {
    std::string input;
    std::string out = "bmc_out";
    bmc::SimulationParams params;
    std::string init = "zeros";
    std::uint64_t seed = 1;

    void add_dynamics_flags(CLI::App* cmd) {
        cmd->add_option("--epsilon", params.epsilon, "protocol gain (default 1e-4)");
        cmd->add_option("--step", params.step, "integration step h, <= epsilon (default: epsilon)");
        cmd->add_option("--tol", params.tol, "residual convergence threshold (default 1e-9)");
        cmd->add_option("--max-steps", params.max_steps, "iteration cap (default 1e7)");
        cmd->add_option("--workers", params.workers, "parallel residual workers (default 1)");
        cmd->add_option("--seed", seed, "seed for --init random (default 1)");
        cmd->add_option("--init", init, "initial state: zeros|random (default zeros)")
            ->check(CLI::IsMember({"zeros", "random"}));
    }

    bmc::StateVector initial_state(const bmc::WeightedGraph& g,
                                   const bmc::RoleAssignment& roles) const {
        if (init == "random") {
            const auto [lo, hi] = bmc::default_random_range(g);
            return bmc::init_state(g, roles, bmc::InitPolicy::uniform_random(lo, hi, seed));
        }
        return bmc::init_state(g, roles, bmc::InitPolicy::zeros());
    }
};

struct GridOptions {
    int threshold = 128;
    int connectivity = 8;
    std::vector<std::string> sources;
    std::vector<std::string> dests;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--pgm-threshold", threshold,
                        "pixels below this are obstacles (default 128)");
        cmd->add_option("--connectivity", connectivity, "grid connectivity (default 8)")
            ->check(CLI::IsMember({4, 8}));
        cmd->add_option("--source", sources, "source cell r,c (0-based from top-left)");
        cmd->add_option("--dest", dests, "destination cell r,c; repeatable");
    }

    bmc::GridMap load(const std::string& path) const {
        const std::string bytes = read_file(path);
        bmc::GridMap m;
        if (bytes.rfind("P2", 0) == 0 || bytes.rfind("P5", 0) == 0)
            m = bmc::parse_pgm(bytes, threshold);
        else
            m = bmc::parse_ascii_grid(bytes);
        for (const std::string& s : sources) bmc::add_source(m, parse_coord(s));
        for (const std::string& d : dests) bmc::add_destination(m, parse_coord(d));
        return m;
    }

    bmc::Connectivity conn() const {
        return connectivity == 4 ? bmc::Connectivity::Four : bmc::Connectivity::Eight;
    }
};

// --- solve: edge-list graph to equilibrium ---

int cmd_solve(const CommonOptions& opt) {
    std::ifstream in(opt.input);
    if (!in) bmc::fail(bmc::ErrorCode::IoError, "cannot open " + opt.input);
    const bmc::EdgeListFile file = bmc::read_edge_list(in);
    const bmc::WeightedGraph g = file.graph();
    const bmc::RoleAssignment roles = bmc::assign_roles(g, file.leaders);

    std::ostringstream csv;
    bmc::TrajectoryCsvStream stream(csv, g.node_count());
    const int stride = opt.params.effective_stride(g.node_count());
    long long step_index = 0;
    const bmc::StepObserver observer = [&](const bmc::StateVector& s,
                                           const bmc::ResidualDiagnostics& d) {
        if (step_index % stride == 0) stream(s, d);
        ++step_index;
    };

    const bmc::Trajectory traj = bmc::run(g, roles, opt.initial_state(g, roles), opt.params, observer);
    // Final snapshot, if the stride skipped it.
    if ((traj.steps_taken % stride) != 0)
        stream(traj.final_state(), traj.final_diag());

    write_file_atomic(opt.out + "_trajectory.csv", csv.str());
    std::ostringstream dist;
    bmc::write_state(dist, traj.final_state());
    write_file_atomic(opt.out + "_distances.txt", dist.str());

    for (int i = 1; i <= g.node_count(); ++i) {
        std::cout << "parents " << i << ':';
        for (int p : bmc::parent_set(g, roles, traj.final_state(), i)) std::cout << ' ' << p;
        std::cout << '\n';
    }
    std::cout << (traj.converged ? "converged" : "not-converged") << " steps "
              << traj.steps_taken << " residual "
              << bmc::format_double(traj.final_diag().max_abs()) << '\n';
    return traj.converged ? kExitOk : kExitNonConvergence;
}

// --- maze: grid to shortest path, with oracle cross-check ---

int cmd_maze(const CommonOptions& opt, const GridOptions& grid, long long frames) {
    const bmc::GridMap m = grid.load(opt.input);
    if (m.destinations.empty())
        bmc::fail(bmc::ErrorCode::NoDestination, "no destination cell given (D marker or --dest)");
    if (m.sources.size() != 1)
        bmc::fail(bmc::ErrorCode::InvalidParameter,
                  "exactly one source required (S marker or --source), got " +
                      std::to_string(m.sources.size()));

    const bmc::GridGraphMapping mapping = bmc::grid_to_graph(m, grid.conn());
    const bmc::RoleAssignment roles = bmc::assign_roles(mapping.graph, mapping.leaders);

    long long step_index = 0;
    bmc::StepObserver observer;
    if (frames > 0) {
        observer = [&](const bmc::StateVector& s, const bmc::ResidualDiagnostics&) {
            if (step_index % frames == 0)
                write_file_atomic(frame_name(opt.out, "frame", step_index),
                                  bmc::render_field_pgm(m, mapping, s));
            ++step_index;
        };
    }

    bmc::SimulationParams params = opt.params;
    params.snapshot_stride = std::numeric_limits<int>::max(); // endpoints only
    const bmc::Trajectory traj =
        bmc::run(mapping.graph, roles, opt.initial_state(mapping.graph, roles), params, observer);
    if (!traj.converged) {
        std::cerr << "not converged after " << traj.steps_taken << " steps\n";
        return kExitNonConvergence;
    }
    if (frames > 0)
        write_file_atomic(frame_name(opt.out, "frame", traj.steps_taken),
                          bmc::render_field_pgm(m, mapping, traj.final_state()));

    const int source = mapping.node_at(m.sources.front());
    bmc::PathOptions popt;
    popt.tol = params.tol;
    const bmc::Path path = bmc::extract_path(mapping.graph, roles, traj.final_state(), source, popt);

    std::ostringstream text;
    bmc::write_path_text(text, path);
    write_file_atomic(opt.out + "_path.txt", text.str());
    write_file_atomic(opt.out + "_path.json", bmc::path_json(path).dump() + "\n");
    write_file_atomic(opt.out + "_path.pgm", bmc::render_path_pgm(m, mapping, path));
    write_file_atomic(opt.out + "_field.pgm",
                      bmc::render_field_pgm(m, mapping, traj.final_state()));

    // Built-in oracle check: the extracted length must be the true
    // shortest distance.
    const bmc::DistanceMap oracle = bmc::dijkstra_multi_source(mapping.graph, mapping.leaders);
    const double err = std::abs(path.length - oracle.at(source));
    std::cout << "path nodes " << path.nodes.size() << " length "
              << bmc::format_double(path.length) << " oracle_err " << bmc::format_double(err)
              << '\n';
    if (err > 1e-6) {
        std::cerr << "oracle mismatch: " << bmc::format_double(err) << '\n';
        return kExitVerifyFailed;
    }
    return kExitOk;
}

// --- cover: complete coverage plan ---

int cmd_cover(const CommonOptions& opt, const GridOptions& grid, long long frames) {
    const bmc::GridMap m = grid.load(opt.input);
    if (m.sources.size() != 1)
        bmc::fail(bmc::ErrorCode::InvalidParameter,
                  "exactly one start cell required (S marker or --source), got " +
                      std::to_string(m.sources.size()));

    const bmc::GridGraphMapping mapping = bmc::grid_to_graph(m, grid.conn());
    const int start = mapping.node_at(m.sources.front());
    const bmc::CoveragePlan plan = bmc::plan_coverage(mapping, start, opt.params);
    const bmc::CoverageReport report = bmc::coverage_report(plan, mapping);

    std::string trace;
    for (int node : plan.trace) trace += std::to_string(node) + '\n';
    write_file_atomic(opt.out + "_trace.txt", trace);
    write_file_atomic(opt.out + "_summary.json", bmc::coverage_report_json(report).dump() + "\n");

    if (frames > 0) {
        for (std::size_t k = 0; k < plan.segments.size(); k += static_cast<std::size_t>(frames))
            write_file_atomic(frame_name(opt.out, "segment", static_cast<long long>(k)),
                              bmc::render_path_pgm(m, mapping, plan.segments[k]));
    }

    std::cout << "covered " << report.covered << '/' << report.total << " trace "
              << report.trace_length << " revisits " << report.revisits << '\n';
    return report.complete() ? kExitOk : kExitVerifyFailed;
}

// --- verify: equilibrium vs oracle ---

int verify_one(const bmc::WeightedGraph& g, const std::vector<int>& leaders,
               const CommonOptions& opt, const std::optional<std::string>& state_path,
               double tol_verify, nlohmann::json& report_out) {
    const bmc::RoleAssignment roles = bmc::assign_roles(g, leaders);
    bmc::StateVector state;
    if (state_path) {
        std::ifstream in(*state_path);
        if (!in) bmc::fail(bmc::ErrorCode::IoError, "cannot open " + *state_path);
        state = bmc::read_state(in);
    } else {
        bmc::SimulationParams params = opt.params;
        params.snapshot_stride = std::numeric_limits<int>::max();
        const bmc::Trajectory traj =
            bmc::run(g, roles, opt.initial_state(g, roles), params);
        if (!traj.converged)
            bmc::fail(bmc::ErrorCode::NonConvergence, "internal solve did not converge");
        state = traj.final_state();
    }
    const bmc::DistanceMap d = bmc::dijkstra_multi_source(g, leaders);
    const bmc::VerifyReport report = bmc::verify_equilibrium(state, d, tol_verify);
    report_out = bmc::verify_report_json(report);
    return report.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const CommonOptions& opt, const std::optional<std::string>& state_path,
               double tol_verify, int batch_n, int batch_seeds) {
    if (batch_seeds > 0) {
        // Random batch: instances fully determined by seeds 1..K.
        int passed = 0;
        nlohmann::json failures = nlohmann::json::array();
        for (int s = 1; s <= batch_seeds; ++s) {
            const bmc::RandomInstance inst =
                bmc::random_connected_instance(static_cast<std::uint64_t>(s), batch_n, batch_n);
            nlohmann::json report;
            if (verify_one(inst.graph, inst.leaders, opt, std::nullopt, tol_verify, report) ==
                kExitOk)
                ++passed;
            else
                failures.push_back({{"seed", s}, {"report", report}});
        }
        const nlohmann::json summary = {
            {"instances", batch_seeds}, {"passed", passed}, {"failures", failures}};
        std::cout << summary.dump() << '\n';
        return passed == batch_seeds ? kExitOk : kExitVerifyFailed;
    }

    std::ifstream in(opt.input);
    if (!in) bmc::fail(bmc::ErrorCode::IoError, "cannot open " + opt.input);
    const bmc::EdgeListFile file = bmc::read_edge_list(in);
    nlohmann::json report;
    const int rc = verify_one(file.graph(), file.leaders, opt, state_path, tol_verify, report);
    std::cout << report.dump() << '\n';
    return rc;
}

// --- trace: trajectory + per-step diagnostics export ---

int cmd_trace(const CommonOptions& opt, int stride_flag) {
    std::ifstream in(opt.input);
    if (!in) bmc::fail(bmc::ErrorCode::IoError, "cannot open " + opt.input);
    const bmc::EdgeListFile file = bmc::read_edge_list(in);
    const bmc::WeightedGraph g = file.graph();
    const bmc::RoleAssignment roles = bmc::assign_roles(g, file.leaders);

    const int stride = stride_flag > 0 ? stride_flag : opt.params.effective_stride(g.node_count());

    std::ostringstream csv, jsonl;
    bmc::TrajectoryCsvStream stream(csv, g.node_count());
    long long step_index = 0;
    const bmc::StepObserver observer = [&](const bmc::StateVector& s,
                                           const bmc::ResidualDiagnostics& d) {
        if (step_index % stride == 0) {
            stream(s, d);
            jsonl << bmc::diagnostics_json_line(s, d) << '\n';
        }
        ++step_index;
    };

    const bmc::Trajectory traj = bmc::run(g, roles, opt.initial_state(g, roles), opt.params, observer);
    if ((traj.steps_taken % stride) != 0) {
        stream(traj.final_state(), traj.final_diag());
        jsonl << bmc::diagnostics_json_line(traj.final_state(), traj.final_diag()) << '\n';
    }

    write_file_atomic(opt.out + "_trajectory.csv", csv.str());
    write_file_atomic(opt.out + "_diagnostics.jsonl", jsonl.str());
    std::cout << (traj.converged ? "converged" : "not-converged") << " steps " << traj.steps_taken
              << '\n';
    return traj.converged ? kExitOk : kExitNonConvergence;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"biased min-consensus shortest-path toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    GridOptions grid;
    long long frames = 0;
    std::optional<std::string> state_path;
    double tol_verify = 1e-6;
    int batch_n = 50;
    int batch_seeds = 0;
    int stride_flag = 0;

    CLI::App* solve = app.add_subcommand("solve", "edge-list graph to equilibrium distances");
    solve->add_option("--input", opt.input, "edge-list file")->required();
    solve->add_option("--out", opt.out, "output prefix (default bmc_out)");
    opt.add_dynamics_flags(solve);

    CLI::App* maze = app.add_subcommand("maze", "solve an occupancy grid and extract the path");
    maze->add_option("--input", opt.input, "ASCII grid or PGM file")->required();
    maze->add_option("--out", opt.out, "output prefix");
    maze->add_option("--frames", frames, "dump every k-th field snapshot as PGM");
    opt.add_dynamics_flags(maze);
    grid.add_flags(maze);

    CLI::App* cover = app.add_subcommand("cover", "complete-coverage plan over a grid");
    cover->add_option("--input", opt.input, "ASCII grid or PGM file")->required();
    cover->add_option("--out", opt.out, "output prefix");
    cover->add_option("--frames", frames, "dump every k-th leg as PGM");
    opt.add_dynamics_flags(cover);
    grid.add_flags(cover);

    CLI::App* verify = app.add_subcommand("verify", "check equilibria against the oracle");
    verify->add_option("--input", opt.input, "edge-list file (single mode)");
    verify->add_option("--state", state_path, "converged-state file; omit to solve internally");
    verify->add_option("--tol-verify", tol_verify, "pass threshold (default 1e-6)");
    verify->add_option("--n", batch_n, "batch mode: node count per instance");
    verify->add_option("--seeds", batch_seeds, "batch mode: number of seeded instances");
    opt.add_dynamics_flags(verify);

    CLI::App* trace = app.add_subcommand("trace", "export trajectory CSV and diagnostics JSONL");
    trace->add_option("--input", opt.input, "edge-list file")->required();
    trace->add_option("--out", opt.out, "output prefix");
    trace->add_option("--stride", stride_flag, "record every k-th step (default: auto)");
    opt.add_dynamics_flags(trace);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        opt.params.validate(); // step <= epsilon enforced before any work
        if (solve->parsed()) return cmd_solve(opt);
        if (maze->parsed()) return cmd_maze(opt, grid, frames);
        if (cover->parsed()) return cmd_cover(opt, grid, frames);
        if (verify->parsed()) {
            if (batch_seeds == 0 && opt.input.empty())
                bmc::fail(bmc::ErrorCode::InvalidParameter, "--input or --seeds required");
            return cmd_verify(opt, state_path, tol_verify, batch_n, batch_seeds);
        }
        if (trace->parsed()) return cmd_trace(opt, stride_flag);
    } catch (const bmc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
