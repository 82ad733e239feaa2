#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ccmarl/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args, const fs::path& out_root) {
    const fs::path log = out_root / "cli_output.log";
    const std::string cmd = "CCMARL_OUTPUT_ROOT=" + out_root.string() + " " + CCMARL_CLI_PATH +
                            " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "ccmarl_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_tiny_config(const fs::path& dir) {
    const auto path = dir / "config.json";
    std::ofstream out(path);
    out << R"({
  "env": {"episode_length": 40},
  "shaping": {"ccm_L": 30, "ccm_draws": 2},
  "episodes": 2,
  "output_dir": "runs"
})";
    return path;
}

}  // namespace

TEST_CASE("cli validate writes a report and exits zero") {
    const auto dir = fresh_dir("validate");
    const auto result = run_cli("validate --emit --out battery --seed 1", dir);
    INFO(result.output);
    REQUIRE(result.exit_code == 0);
    REQUIRE(fs::exists(dir / "battery" / "validation_report.json"));
    REQUIRE(fs::exists(dir / "battery" / "coupled_logistic.csv"));
    REQUIRE(result.output.find("PASS") != std::string::npos);
    REQUIRE(result.output.find("FAIL") == std::string::npos);
}

TEST_CASE("cli ccm reports directionality on the emitted oracle") {
    const auto dir = fresh_dir("ccm");
    REQUIRE(run_cli("validate --emit --out battery", dir).exit_code == 0);
    const auto result = run_cli("ccm " + (dir / "battery" / "coupled_logistic.csv").string() +
                                    " --cols x,y --lvalues 100,900 --draws 8 --out report.json",
                                dir);
    INFO(result.output);
    REQUIRE(result.exit_code == 0);
    REQUIRE(fs::exists(dir / "report.json"));
    const auto report = nlohmann::json::parse(std::ifstream(dir / "report.json"));
    double y_to_x = 0.0, x_to_y = 0.0;
    for (const auto& d : report.at("directions")) {
        if (d.at("source_manifold") == "y") y_to_x = d.at("score").get<double>();
        else x_to_y = d.at("score").get<double>();
    }
    REQUIRE(y_to_x > 0.8);
    REQUIRE(y_to_x - x_to_y >= 0.3);
}

TEST_CASE("cli ccm fails cleanly on a missing column") {
    const auto dir = fresh_dir("ccm_fail");
    REQUIRE(run_cli("validate --emit --out battery", dir).exit_code == 0);
    const auto result = run_cli(
        "ccm " + (dir / "battery" / "sine.csv").string() + " --cols s,missing", dir);
    REQUIRE(result.exit_code == 1);
    REQUIRE(result.output.find("missing") != std::string::npos);
}

TEST_CASE("cli simulate dumps a well-formed trajectory csv") {
    const auto dir = fresh_dir("simulate");
    const auto config = write_tiny_config(dir);
    const auto result =
        run_cli("simulate " + config.string() + " --seed 3 --dump traj.csv --episodes 2", dir);
    INFO(result.output);
    REQUIRE(result.exit_code == 0);
    const auto table = ccmarl::read_csv((dir / "traj.csv").string());
    REQUIRE(table.header ==
            std::vector<std::string>{"episode", "step", "agent_id", "px", "py", "vx", "vy", "ax",
                                     "ay", "reward"});
    REQUIRE(table.rows.size() == 2 * 40 * 4);
    // numeric columns parse
    REQUIRE(table.numeric_column("px").size() == table.rows.size());

    // same seed, same bytes
    const auto again =
        run_cli("simulate " + config.string() + " --seed 3 --dump traj2.csv --episodes 2", dir);
    REQUIRE(again.exit_code == 0);
    std::ifstream a(dir / "traj.csv"), b(dir / "traj2.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    REQUIRE(sa.str() == sb.str());
}

TEST_CASE("cli train honors dotted overrides and writes artifacts") {
    const auto dir = fresh_dir("train");
    const auto config = write_tiny_config(dir);
    const auto result =
        run_cli("train " + config.string() + " --seed 5 --shaping.theta 0.4 --episodes 3", dir);
    INFO(result.output);
    REQUIRE(result.exit_code == 0);
    const auto run_dir = dir / "runs" / "run_seed5";
    REQUIRE(fs::exists(run_dir / "metrics.jsonl"));
    REQUIRE(fs::exists(run_dir / "checkpoint_agent0.txt"));
    REQUIRE(fs::exists(run_dir / "run_info.json"));

    const auto resolved = nlohmann::json::parse(std::ifstream(run_dir / "config.json"));
    REQUIRE(resolved.at("shaping").at("theta").get<double>() == 0.4);
    REQUIRE(resolved.at("episodes").get<int>() == 3);

    std::ifstream metrics(run_dir / "metrics.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(metrics, line)) ++lines;
    REQUIRE(lines == 3);
}

TEST_CASE("cli rejects an unknown override key") {
    const auto dir = fresh_dir("bad_override");
    const auto config = write_tiny_config(dir);
    const auto result = run_cli("train " + config.string() + " --shaping.strength 2.0", dir);
    REQUIRE(result.exit_code == 1);
    REQUIRE(result.output.find("shaping.strength") != std::string::npos);
}

TEST_CASE("cli sweep writes the summary table") {
    const auto dir = fresh_dir("sweep");
    const auto config = write_tiny_config(dir);
    const auto result =
        run_cli("sweep " + config.string() + " --thetas 0.0,0.5 --seeds 1..2", dir);
    INFO(result.output);
    REQUIRE(result.exit_code == 0);
    const auto table = ccmarl::read_csv((dir / "runs" / "sweep" / "sweep_summary.csv").string());
    REQUIRE(table.rows.size() == 4);
    REQUIRE(table.numeric_column("mean_final_ccm").size() == 4);
    for (const auto& row : table.rows)
        REQUIRE(row[static_cast<std::size_t>(table.column_index("status"))] == "ok");
}

TEST_CASE("cli reports missing config as a named error") {
    const auto dir = fresh_dir("missing");
    const auto result = run_cli("train /nonexistent/conf.json", dir);
    REQUIRE(result.exit_code == 1);
    REQUIRE(result.output.find("error") != std::string::npos);
}
