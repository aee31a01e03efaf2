#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <bmc/dijkstra.hpp>
#include <bmc/export.hpp>
#include <bmc/graph_io.hpp>

#include "helpers.hpp"
#include "maze_gen.hpp"

namespace fs = std::filesystem;
using namespace bmc;

namespace {

std::string cli_binary() {
    const char* env = std::getenv("BMC_CLI");
    REQUIRE_MESSAGE(env != nullptr, "BMC_CLI must point at the CLI binary");
    return env;
}

struct TempDir {
    fs::path path;

    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("bmc_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

int run_cli(const TempDir& dir, const std::string& args) {
    const std::string cmd = "cd '" + dir.path.string() + "' && '" + cli_binary() + "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), ("missing file " + p.string()).c_str());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void put(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

std::string ten_node_text() {
    std::ostringstream out;
    write_edge_list(out, bmc_test::ten_node_graph(), {1});
    return out.str();
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("solve writes distances, trajectory and parent sets") {
    TempDir dir;
    put(dir.path / "g.txt", ten_node_text());
    CHECK(run_cli(dir, "solve --input g.txt --epsilon 1e-6 --out run") == 0);

    std::istringstream dist(slurp(dir.path / "run_distances.txt"));
    const StateVector final_state = read_state(dist);
    CHECK(final_state.values == bmc_test::ten_node_distances());

    const std::string console = slurp(dir.path / "stdout.txt");
    CHECK(console.find("parents 8: 3 9") != std::string::npos);
    CHECK(console.find("converged steps 6") != std::string::npos);

    const std::string csv = slurp(dir.path / "run_trajectory.csv");
    CHECK(csv.rfind("t,x_1,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8); // header + 7 snapshots
}

TEST_CASE("solve exit codes") {
    TempDir dir;
    SUBCASE("disconnected graph is exit 2") {
        put(dir.path / "g.txt", "3 1\n1 2 1.0\nleaders 1\n1\n");
        CHECK(run_cli(dir, "solve --input g.txt") == 2);
    }
    SUBCASE("forced non-convergence is exit 3") {
        put(dir.path / "g.txt", ten_node_text());
        CHECK(run_cli(dir, "solve --input g.txt --max-steps 1") == 3);
    }
    SUBCASE("parse failures are exit 1") {
        put(dir.path / "g.txt", "not a graph\n");
        CHECK(run_cli(dir, "solve --input g.txt") == 1);
        CHECK(run_cli(dir, "solve --input missing.txt") == 1);
    }
    SUBCASE("step above epsilon is rejected at parse time") {
        put(dir.path / "g.txt", ten_node_text());
        CHECK(run_cli(dir, "solve --input g.txt --epsilon 1e-6 --step 1e-4") == 1);
    }
}

TEST_CASE("maze command") {
    TempDir dir;

    SUBCASE("solves and cross-checks the oracle") {
        GridMap maze = bmc_test::generate_maze(64, 64, 11);
        add_source(maze, {61, 61});
        add_destination(maze, {1, 1});
        put(dir.path / "m.txt", serialize_ascii_grid(maze));
        CHECK(run_cli(dir, "maze --input m.txt --out mz") == 0);

        // The written path length equals the oracle distance.
        const GridGraphMapping mapping = grid_to_graph(maze, Connectivity::Eight);
        const DistanceMap oracle = dijkstra_multi_source(mapping.graph, mapping.leaders);
        const std::string path_text = slurp(dir.path / "mz_path.txt");
        const auto len_pos = path_text.find("length ");
        REQUIRE(len_pos != std::string::npos);
        const double written = parse_double(
            path_text.substr(len_pos + 7, path_text.size() - len_pos - 8));
        const int source = mapping.node_at(maze.sources.front());
        CHECK(std::abs(written - oracle.at(source)) <= 1e-6);
        CHECK(fs::exists(dir.path / "mz_path.pgm"));
        CHECK(fs::exists(dir.path / "mz_field.pgm"));
    }
    SUBCASE("walled-off destination is exit 2") {
        put(dir.path / "m.txt", "S#D\n");
        CHECK(run_cli(dir, "maze --input m.txt") == 2);
    }
    SUBCASE("missing destination is exit 1") {
        put(dir.path / "m.txt", "S..\n");
        CHECK(run_cli(dir, "maze --input m.txt") == 1);
    }
    SUBCASE("frames are emitted") {
        GridMap maze = bmc_test::generate_maze(33, 33, 12);
        add_source(maze, {31, 31});
        add_destination(maze, {1, 1});
        put(dir.path / "m.txt", serialize_ascii_grid(maze));
        CHECK(run_cli(dir, "maze --input m.txt --out fr --frames 100 --init random --seed 3") == 0);
        int frames = 0;
        for (const auto& entry : fs::directory_iterator(dir.path))
            if (entry.path().filename().string().rfind("fr_frame_", 0) == 0) ++frames;
        CHECK(frames >= 2);
    }
    SUBCASE("pgm input with cli markers") {
        // 3x3 all-white image; route from one corner to the other.
        put(dir.path / "m.pgm", "P2\n3 3\n255\n255 255 255\n255 255 255\n255 255 255\n");
        CHECK(run_cli(dir,
                      "maze --input m.pgm --source 2,2 --dest 0,0 --connectivity 4 --out px") == 0);
        const std::string path_text = slurp(dir.path / "px_path.txt");
        CHECK(path_text.find("length 4") != std::string::npos);
    }
}

TEST_CASE("cover command") {
    TempDir dir;

    SUBCASE("open grid is fully covered") {
        put(dir.path / "g.txt", "S.......\n........\n........\n........\n"
                                "........\n........\n........\n........\n");
        CHECK(run_cli(dir, "cover --input g.txt --connectivity 4 --out cv") == 0);
        const auto summary = nlohmann::json::parse(slurp(dir.path / "cv_summary.json"));
        CHECK(summary["covered"] == 64);
        CHECK(summary["total"] == 64);
        CHECK(summary["complete"] == true);
        const std::string trace = slurp(dir.path / "cv_trace.txt");
        CHECK(std::count(trace.begin(), trace.end(), '\n') == summary["trace_length"]);
    }
    SUBCASE("start on an obstacle is exit 1") {
        put(dir.path / "g.txt", "#..\n...\n");
        CHECK(run_cli(dir, "cover --input g.txt --source 0,0") == 1);
    }
    SUBCASE("frames emit one overlay per leg") {
        put(dir.path / "g.txt", "S...\n....\n");
        CHECK(run_cli(dir, "cover --input g.txt --connectivity 4 --frames 1 --out fc") == 0);
        int frames = 0;
        for (const auto& entry : fs::directory_iterator(dir.path))
            if (entry.path().filename().string().rfind("fc_segment_", 0) == 0) ++frames;
        const auto summary = nlohmann::json::parse(slurp(dir.path / "fc_summary.json"));
        CHECK(frames == summary["trace_length"].get<int>() - 1); // one leg per move here
    }
    SUBCASE("disconnected free space is exit 2") {
        put(dir.path / "g.txt", "S#.\n###\n...\n");
        CHECK(run_cli(dir, "cover --input g.txt --connectivity 4") == 2);
    }
}

TEST_CASE("verify command") {
    TempDir dir;
    put(dir.path / "g.txt", ten_node_text());

    SUBCASE("internal solve passes") {
        CHECK(run_cli(dir, "verify --input g.txt --epsilon 1e-6") == 0);
        const auto report = nlohmann::json::parse(slurp(dir.path / "stdout.txt"));
        CHECK(report["pass"] == true);
    }
    SUBCASE("solve's distances file feeds back through --state") {
        CHECK(run_cli(dir, "solve --input g.txt --out run") == 0);
        CHECK(run_cli(dir, "verify --input g.txt --state run_distances.txt") == 0);
    }
    SUBCASE("perturbed state file fails with exit 4") {
        auto values = bmc_test::ten_node_distances();
        values[7] += 1.0;
        std::ostringstream state;
        for (double v : values) state << format_double(v) << '\n';
        put(dir.path / "bad_state.txt", state.str());
        CHECK(run_cli(dir, "verify --input g.txt --state bad_state.txt") == 4);
        const auto report = nlohmann::json::parse(slurp(dir.path / "stdout.txt"));
        CHECK(report["pass"] == false);
        CHECK(report["worst_node"] == 8);
    }
    SUBCASE("random batch") {
        CHECK(run_cli(dir, "verify --n 50 --seeds 20") == 0);
        const auto summary = nlohmann::json::parse(slurp(dir.path / "stdout.txt"));
        CHECK(summary["instances"] == 20);
        CHECK(summary["passed"] == 20);
    }
}

TEST_CASE("trace command emits csv and jsonl") {
    TempDir dir;
    put(dir.path / "g.txt", ten_node_text());
    CHECK(run_cli(dir, "trace --input g.txt --out tr") == 0);

    const std::string csv = slurp(dir.path / "tr_trajectory.csv");
    CHECK(csv.rfind("t,x_1,", 0) == 0);
    const std::string jsonl = slurp(dir.path / "tr_diagnostics.jsonl");
    std::istringstream lines(jsonl);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("upper_set"));
        CHECK(j.contains("lower_set"));
        ++rows;
    }
    CHECK(rows == std::count(csv.begin(), csv.end(), '\n') - 1);
}

TEST_CASE("packaged data files are valid") {
    const char* data = std::getenv("BMC_DATA");
    REQUIRE_MESSAGE(data != nullptr, "BMC_DATA must point at the data directory");
    const fs::path dir(data);

    SUBCASE("ten-node demo graph matches the fixture") {
        std::ifstream in(dir / "ten_node_graph.txt");
        const EdgeListFile file = read_edge_list(in);
        CHECK(file.graph() == bmc_test::ten_node_graph());
        CHECK(file.leaders == std::vector<int>{1});
    }
    SUBCASE("demo maze is solvable and coverable") {
        const GridMap m = parse_ascii_grid(slurp(dir / "demo_maze.txt"));
        CHECK(m.sources.size() == 1);
        CHECK(m.destinations.size() == 1);
        CHECK(validate_connected(grid_to_graph(m, Connectivity::Four).graph));
        CHECK(validate_connected(grid_to_graph(m, Connectivity::Eight).graph));
    }
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    TempDir a, b;
    const std::string graph = ten_node_text();
    put(a.path / "g.txt", graph);
    put(b.path / "g.txt", graph);
    const std::string args = "solve --input g.txt --init random --seed 9 --step 5e-5 --out d";
    CHECK(run_cli(a, args) == 0);
    CHECK(run_cli(b, args) == 0);
    CHECK(slurp(a.path / "d_trajectory.csv") == slurp(b.path / "d_trajectory.csv"));
    CHECK(slurp(a.path / "d_distances.txt") == slurp(b.path / "d_distances.txt"));
    CHECK(slurp(a.path / "stdout.txt") == slurp(b.path / "stdout.txt"));
}

TEST_SUITE_END();
