#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccmarl/ccmarl.hpp"

using namespace ccmarl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "ccmarl_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ExperimentConfig tiny_config() {
    ExperimentConfig config;
    config.env.episode_length = 40;
    config.shaping.ccm_L = 30;
    config.shaping.ccm_draws = 2;
    config.episodes = 3;
    return config;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("one episode produces one metrics record and three checkpoints") {
    auto config = tiny_config();
    config.episodes = 1;
    const auto dir = fresh_dir("single");
    const auto artifacts = run_training(config, 1, dir);
    REQUIRE(artifacts.metrics.size() == 1);
    REQUIRE(artifacts.checkpoint_paths.size() == 3);
    for (const auto& path : artifacts.checkpoint_paths) REQUIRE(fs::exists(path));

    // line count equals episodes completed
    std::istringstream lines(read_file(artifacts.metrics_path));
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    REQUIRE(count == 1);

    // every record carries the config digest
    const auto parsed = nlohmann::json::parse(read_file(artifacts.metrics_path));
    REQUIRE(parsed.at("config_digest").get<std::string>() == config_digest(config));
}

TEST_CASE("identical config and seed give byte-identical metrics") {
    const auto config = tiny_config();
    const auto dir_a = fresh_dir("repeat_a");
    const auto dir_b = fresh_dir("repeat_b");
    const auto a = run_training(config, 7, dir_a);
    const auto b = run_training(config, 7, dir_b);
    REQUIRE(read_file(a.metrics_path) == read_file(b.metrics_path));
    for (std::size_t i = 0; i < a.checkpoint_paths.size(); ++i)
        REQUIRE(read_file(a.checkpoint_paths[i]) == read_file(b.checkpoint_paths[i]));
    const auto c = run_training(config, 8, fresh_dir("repeat_c"));
    REQUIRE(read_file(a.metrics_path) != read_file(c.metrics_path));
}

TEST_CASE("kappa zero reproduces the unshaped learning trajectory") {
    auto config = tiny_config();
    config.shaping.kappa = 0.0;
    config.episodes = 4;

    // reference loop with the shaping term dropped entirely
    std::array<PolicyParams, kNumPredators> policies;
    std::array<double, kNumPredators> baselines{};
    for (int a = 0; a < kNumPredators; ++a)
        policies[static_cast<std::size_t>(a)] =
            policy_init(derive_seed(5, seed_tag::policy, static_cast<std::uint64_t>(a)));
    for (int ep = 0; ep < config.episodes; ++ep) {
        const auto batch =
            rollout(config.env, policies, std::nullopt, config.env.episode_length,
                    derive_seed(5, seed_tag::rollout, static_cast<std::uint64_t>(ep)));
        for (int a = 0; a < kNumPredators; ++a) {
            const std::size_t i = static_cast<std::size_t>(a);
            const auto result =
                reinforce_update(policies[i], baselines[i], batch.agents[i], 0.0, config.learner);
            policies[i] = result.params;
            baselines[i] = result.baseline;
        }
    }

    const auto artifacts = run_training(config, 5, fresh_dir("neutral"));
    for (int a = 0; a < kNumPredators; ++a) {
        const auto loaded =
            load_checkpoint(artifacts.checkpoint_paths[static_cast<std::size_t>(a)]);
        REQUIRE(loaded.params == policies[static_cast<std::size_t>(a)]);
        REQUIRE(loaded.baseline == baselines[static_cast<std::size_t>(a)]);
    }
}

TEST_CASE("a failing run flushes a truncation marker") {
    auto config = tiny_config();
    config.env.episode_length = 20;  // too short for ccm_L=30, bypassing load-time checks
    const auto dir = fresh_dir("truncated");
    REQUIRE_THROWS_AS(run_training(config, 1, dir), std::invalid_argument);
    const auto contents = read_file(dir / "metrics.jsonl");
    REQUIRE(contents.find("\"truncated\":true") != std::string::npos);
}

TEST_CASE("sweep runs every cell and matches standalone runs") {
    const auto config = tiny_config();
    const auto root = fresh_dir("sweep");
    const auto summary = sweep_threshold(config, {0.0}, {1, 2}, root, false);
    REQUIRE(summary.cells.size() == 2);
    for (const auto& cell : summary.cells) REQUIRE(cell.ok);
    REQUIRE(fs::exists(summary.summary_path));

    // cell values equal an individually executed run with the same settings
    ExperimentConfig standalone_config = config;
    standalone_config.shaping.theta = 0.0;
    const auto standalone = run_training(standalone_config, 2, fresh_dir("sweep_standalone"));
    const int window = final_window_size(config.episodes);
    double ret = 0.0, ccm = 0.0;
    for (int ep = config.episodes - window; ep < config.episodes; ++ep) {
        const auto& m = standalone.metrics[static_cast<std::size_t>(ep)];
        double predator_mean = 0.0;
        for (int a = 0; a < kNumPredators; ++a)
            predator_mean += m.env_return[static_cast<std::size_t>(a)];
        ret += predator_mean / kNumPredators;
        ccm += m.summary.overall_mean;
    }
    const auto& cell = summary.cells[1];
    REQUIRE(cell.seed == 2);
    REQUIRE(cell.mean_final_env_return == Catch::Approx(ret / window));
    REQUIRE(cell.mean_final_ccm == Catch::Approx(ccm / window));

    // parallel execution produces the same summary file
    const auto root_par = fresh_dir("sweep_par");
    const auto summary_par = sweep_threshold(config, {0.0}, {1, 2}, root_par, true);
    auto strip_dir = [](std::string s) {
        std::string out;
        std::istringstream lines(s);
        std::string line;
        while (std::getline(lines, line)) out += line.substr(0, line.rfind(',')) + "\n";
        return out;
    };
    REQUIRE(strip_dir(read_file(summary.summary_path)) ==
            strip_dir(read_file(summary_par.summary_path)));
}

TEST_CASE("failed sweep cells are recorded without stopping the sweep") {
    auto config = tiny_config();
    const auto root = fresh_dir("sweep_fail");
    // episode too short for the library: every cell fails but is recorded
    config.env.episode_length = 20;
    const auto summary = sweep_threshold(config, {0.0, 0.5}, {1}, root, false);
    REQUIRE(summary.cells.size() == 2);
    for (const auto& cell : summary.cells) {
        REQUIRE_FALSE(cell.ok);
        REQUIRE_FALSE(cell.error.empty());
    }
    const auto contents = read_file(summary.summary_path);
    REQUIRE(contents.find("failed") != std::string::npos);
}

TEST_CASE("ccm report on identical columns scores near one in both directions") {
    const auto dir = fresh_dir("report");
    const auto sine = signal_series(SignalKind::sine, 300, 1, 0.01);
    const auto path = dir / "input.csv";
    {
        std::ofstream out(path);
        out << "t,a,b\n";
        for (std::size_t t = 0; t < sine.size(); ++t)
            out << t << ',' << sine[t] << ',' << sine[t] << '\n';
    }
    CcmConfig ccm;
    ccm.n_draws = 4;
    const auto report = ccm_report(path.string(), "a", "b", ccm, {}, 1,
                                   (dir / "report.json").string());
    REQUIRE(fs::exists(dir / "report.json"));
    for (const auto& direction : report.at("directions")) {
        REQUIRE(direction.at("score").get<double>() >= 0.99);
    }
}

TEST_CASE("ccm report errors name the missing column and bad cells") {
    const auto dir = fresh_dir("report_errors");
    const auto path = dir / "input.csv";
    {
        std::ofstream out(path);
        out << "t,a,b\n0,1.0,2.0\n1,oops,3.0\n";
    }
    CcmConfig ccm;
    try {
        ccm_report(path.string(), "c", "a", ccm, {}, 1, "");
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        REQUIRE(std::string(e.what()).find("'c'") != std::string::npos);
    }
    try {
        ccm_report(path.string(), "a", "b", ccm, {}, 1, "");
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        REQUIRE(msg.find("row 3") != std::string::npos);
        REQUIRE(msg.find("'a'") != std::string::npos);
    }

    // numeric but far too short to embed
    const auto short_path = dir / "short.csv";
    {
        std::ofstream out(short_path);
        out << "a,b\n1.0,2.0\n2.0,3.0\n3.0,1.0\n";
    }
    try {
        ccm_report(short_path.string(), "a", "b", ccm, {}, 1, "");
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        REQUIRE(std::string(e.what()).find("too short") != std::string::npos);
    }
}

TEST_CASE("validation battery passes and reports one entry per check") {
    const auto dir = fresh_dir("validate");
    const auto report = validate_suite(dir, 1);
    REQUIRE(report.all_passed);
    REQUIRE(report.checks.size() == 8);
    const auto parsed = nlohmann::json::parse(read_file(report.report_path));
    REQUIRE(parsed.at("all_passed").get<bool>());
    REQUIRE(parsed.at("checks").size() == report.checks.size());
    for (const auto& entry : parsed.at("checks")) {
        REQUIRE(entry.contains("measured"));
        REQUIRE(entry.contains("threshold"));
    }
}

TEST_CASE("unnormalized weights trip the boundedness check") {
    const auto dir = fresh_dir("validate_fault");
    const auto report = validate_suite(dir, 1, [](const std::vector<double>& dists) {
        std::vector<double> w(dists.size(), 1.0);  // deliberately unnormalized
        return w;
    });
    bool boundedness_failed = false;
    for (const auto& check : report.checks)
        if (check.name == "estimator_boundedness") boundedness_failed = !check.passed;
    REQUIRE(boundedness_failed);
    REQUIRE_FALSE(report.all_passed);
}

TEST_CASE("emitted oracle series support the report pipeline") {
    const auto dir = fresh_dir("emit");
    const auto paths = emit_oracle_series(dir, 3);
    REQUIRE(paths.size() == 3);
    for (const auto& p : paths) REQUIRE(fs::exists(p));

    CcmConfig ccm;
    ccm.n_draws = 8;
    const auto report = ccm_report(paths[0], "x", "y", ccm, {100, 900}, 1, "");
    // y is driven by x, so y's manifold recovers x
    const auto& directions = report.at("directions");
    double y_to_x = 0.0, x_to_y = 0.0;
    for (const auto& d : directions) {
        if (d.at("source_manifold") == "y") y_to_x = d.at("score").get<double>();
        if (d.at("source_manifold") == "x") x_to_y = d.at("score").get<double>();
    }
    REQUIRE(y_to_x - x_to_y >= 0.3);
}
