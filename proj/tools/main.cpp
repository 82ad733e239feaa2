// ccmarl command line: validation battery, cross-map reports, environment
// simulation, training runs, and threshold sweeps. Any config field can be
// overridden with a dotted flag, e.g. --shaping.theta 0.4. The environment
// variable CCMARL_OUTPUT_ROOT, when set, anchors all relative output paths.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccmarl/ccmarl.hpp"

namespace {

namespace fs = std::filesystem;
using ccmarl::json;

fs::path output_root() {
    if (const char* root = std::getenv("CCMARL_OUTPUT_ROOT")) return fs::path(root);
    return fs::path(".");
}

fs::path resolve_output(const std::string& path) {
    fs::path p(path);
    return p.is_absolute() ? p : output_root() / p;
}

// Parses leftover "--a.b.c value" (or "--a.b.c=value") tokens into JSON
// patches on the config object. Scalars only; numbers and booleans are
// detected, anything else stays a string.
void apply_dotted_overrides(json& config, const std::vector<std::string>& extras) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        std::string key = extras[i];
        if (key.rfind("--", 0) != 0)
            throw std::invalid_argument("unrecognized argument '" + key + "'");
        key = key.substr(2);
        std::string value;
        const auto eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= extras.size())
                throw std::invalid_argument("missing value for override '--" + key + "'");
            value = extras[++i];
        }

        json parsed;
        try {
            parsed = json::parse(value);
            if (!parsed.is_number() && !parsed.is_boolean() && !parsed.is_array())
                parsed = value;
        } catch (const json::parse_error&) {
            parsed = value;
        }

        json* node = &config;
        std::stringstream path(key);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(path, part, '.')) parts.push_back(part);
        if (parts.empty()) throw std::invalid_argument("empty override key");
        for (std::size_t p = 0; p + 1 < parts.size(); ++p) node = &(*node)[parts[p]];
        (*node)[parts.back()] = parsed;
    }
}

ccmarl::ExperimentConfig load_config_with_overrides(const std::string& path,
                                                    const std::vector<std::string>& extras) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: malformed JSON in '" + path + "': " + e.what());
    }
    apply_dotted_overrides(j, extras);
    return ccmarl::config_from_json(j);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& spec) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto range = token.find("..");
        if (range != std::string::npos) {
            const std::uint64_t lo = std::stoull(token.substr(0, range));
            const std::uint64_t hi = std::stoull(token.substr(range + 2));
            if (hi < lo) throw std::invalid_argument("seed range '" + token + "' is descending");
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else if (!token.empty()) {
            seeds.push_back(std::stoull(token));
        }
    }
    if (seeds.empty()) throw std::invalid_argument("empty seed list '" + spec + "'");
    return seeds;
}

std::vector<double> parse_double_list(const std::string& spec) {
    std::vector<double> values;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) values.push_back(std::stod(token));
    }
    if (values.empty()) throw std::invalid_argument("empty list '" + spec + "'");
    return values;
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> values;
    for (const double v : parse_double_list(spec)) values.push_back(static_cast<int>(v));
    return values;
}

int cmd_validate(bool emit, const std::string& out_dir, std::uint64_t seed) {
    const fs::path dir = resolve_output(out_dir);
    const auto report = ccmarl::validate_suite(dir, seed);
    for (const auto& check : report.checks)
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name
                  << "  measured=" << check.measured << " " << check.comparator << " "
                  << check.threshold << "  (" << check.details << ")\n";
    std::cout << "report: " << report.report_path << "\n";
    if (emit) {
        for (const auto& path : ccmarl::emit_oracle_series(dir, seed))
            std::cout << "emitted: " << path << "\n";
    }
    return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coordination-aware multi-agent pursuit with cross-mapping analysis"};
    app.require_subcommand(1);

    // validate
    auto* validate = app.add_subcommand("validate", "run the self-check battery");
    bool emit = false;
    std::string validate_out = "validate";
    std::uint64_t validate_seed = 1;
    validate->add_flag("--emit", emit, "also write the oracle series as csv files");
    validate->add_option("--out", validate_out, "output directory");
    validate->add_option("--seed", validate_seed, "base seed");

    // ccm
    auto* ccm_cmd = app.add_subcommand("ccm", "cross-map two columns of a csv file");
    std::string ccm_file, ccm_cols, ccm_out, ccm_lvalues;
    int ccm_E = 3, ccm_tau = 1, ccm_theiler = -1, ccm_draws = 32;
    std::uint64_t ccm_seed = 1;
    ccm_cmd->add_option("file", ccm_file, "input csv with a header row")->required();
    ccm_cmd->add_option("--cols", ccm_cols, "two column names, comma separated")->required();
    ccm_cmd->add_option("--E", ccm_E, "embedding dimension");
    ccm_cmd->add_option("--tau", ccm_tau, "embedding lag");
    ccm_cmd->add_option("--theiler", ccm_theiler, "temporal exclusion window, default (E-1)*tau");
    ccm_cmd->add_option("--draws", ccm_draws, "library draws per size");
    ccm_cmd->add_option("--lvalues", ccm_lvalues, "library sizes, comma separated");
    ccm_cmd->add_option("--seed", ccm_seed, "rng seed");
    ccm_cmd->add_option("--out", ccm_out, "report path, default <file>.ccm.json");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "roll episodes and dump the trajectories");
    simulate->allow_extras();
    std::string sim_config, sim_dump, sim_checkpoints;
    std::uint64_t sim_seed = 1;
    int sim_episodes = 1;
    simulate->add_option("config", sim_config, "experiment config json")->required();
    simulate->add_option("--seed", sim_seed, "episode seed");
    simulate->add_option("--dump", sim_dump, "trajectory csv path")->required();
    simulate->add_option("--episodes", sim_episodes, "episodes to roll");
    simulate->add_option("--checkpoints", sim_checkpoints,
                         "directory with checkpoint_agent<i>.txt to load policies from");

    // train
    auto* train = app.add_subcommand("train", "run one training run");
    train->allow_extras();
    std::string train_config;
    std::int64_t train_seed = -1;
    train->add_option("config", train_config, "experiment config json")->required();
    train->add_option("--seed", train_seed, "run seed, default first config seed");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a coordination-threshold sweep");
    sweep->allow_extras();
    std::string sweep_config, sweep_thetas, sweep_seeds;
    bool sweep_serial = false;
    sweep->add_option("config", sweep_config, "experiment config json")->required();
    sweep->add_option("--thetas", sweep_thetas, "theta values, comma separated")->required();
    sweep->add_option("--seeds", sweep_seeds, "seed list, e.g. 1..10 or 1,2,5");
    sweep->add_flag("--serial", sweep_serial, "disable parallel cells");

    try {
        app.parse(argc, argv);

        if (validate->parsed()) return cmd_validate(emit, validate_out, validate_seed);

        if (ccm_cmd->parsed()) {
            const auto comma = ccm_cols.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--cols expects two names, e.g. --cols x,y");
            const std::string col_a = ccm_cols.substr(0, comma);
            const std::string col_b = ccm_cols.substr(comma + 1);
            ccmarl::CcmConfig ccm;
            ccm.embedding.E = ccm_E;
            ccm.embedding.tau = ccm_tau;
            ccm.embedding.theiler = ccm_theiler >= 0
                                        ? ccm_theiler
                                        : ccmarl::EmbeddingParams::default_theiler(ccm_E, ccm_tau);
            ccm.n_draws = ccm_draws;
            std::vector<int> ladder;
            if (!ccm_lvalues.empty()) ladder = parse_int_list(ccm_lvalues);
            const std::string out = ccm_out.empty() ? ccm_file + ".ccm.json" : ccm_out;
            const auto report = ccmarl::ccm_report(ccm_file, col_a, col_b, ccm, ladder, ccm_seed,
                                                   resolve_output(out).string());
            for (const auto& direction : report.at("directions"))
                std::cout << direction.at("source_manifold").get<std::string>() << " -> "
                          << direction.at("target").get<std::string>()
                          << ": score=" << direction.at("score").get<double>()
                          << " convergence_delta="
                          << direction.at("convergence_delta").get<double>() << "\n";
            std::cout << "report: " << resolve_output(out).string() << "\n";
            return 0;
        }

        if (simulate->parsed()) {
            const auto config = load_config_with_overrides(sim_config, simulate->remaining());
            std::array<ccmarl::PolicyParams, ccmarl::kNumPredators> policies;
            if (!sim_checkpoints.empty()) {
                for (int a = 0; a < ccmarl::kNumPredators; ++a)
                    policies[static_cast<std::size_t>(a)] =
                        ccmarl::load_checkpoint((fs::path(sim_checkpoints) /
                                                 ("checkpoint_agent" + std::to_string(a) + ".txt"))
                                                    .string())
                            .params;
            } else {
                for (int a = 0; a < ccmarl::kNumPredators; ++a)
                    policies[static_cast<std::size_t>(a)] = ccmarl::policy_init(
                        ccmarl::derive_seed(sim_seed, ccmarl::seed_tag::policy,
                                            static_cast<std::uint64_t>(a)));
            }
            const fs::path dump_path = resolve_output(sim_dump);
            if (dump_path.has_parent_path()) fs::create_directories(dump_path.parent_path());
            std::ofstream out(dump_path);
            if (!out) throw std::runtime_error("simulate: cannot write '" + dump_path.string() + "'");
            ccmarl::write_trajectory_header(out);
            for (int ep = 0; ep < sim_episodes; ++ep) {
                const auto batch = ccmarl::rollout(
                    config.env, policies, std::nullopt, config.env.episode_length,
                    ccmarl::derive_seed(sim_seed, ccmarl::seed_tag::rollout,
                                        static_cast<std::uint64_t>(ep)));
                ccmarl::append_trajectory_csv(out, batch, ep);
            }
            std::cout << "dump: " << dump_path.string() << "\n";
            return 0;
        }

        if (train->parsed()) {
            const auto config = load_config_with_overrides(train_config, train->remaining());
            const std::uint64_t seed =
                train_seed >= 0 ? static_cast<std::uint64_t>(train_seed) : config.seeds.front();
            const fs::path run_dir =
                resolve_output(config.output_dir) / ("run_seed" + std::to_string(seed));
            const auto artifacts = ccmarl::run_training(config, seed, run_dir);
            double final_ccm = 0.0;
            const int window = ccmarl::final_window_size(config.episodes);
            for (int ep = config.episodes - window; ep < config.episodes; ++ep)
                final_ccm +=
                    artifacts.metrics[static_cast<std::size_t>(ep)].summary.overall_mean;
            std::cout << "run_dir: " << artifacts.run_dir << "\n"
                      << "episodes: " << config.episodes << "\n"
                      << "final_window_overall_ccm: " << final_ccm / window << "\n"
                      << "wall_seconds: " << artifacts.wall_seconds << "\n";
            return 0;
        }

        if (sweep->parsed()) {
            const auto config = load_config_with_overrides(sweep_config, sweep->remaining());
            const auto thetas = parse_double_list(sweep_thetas);
            const auto seeds =
                sweep_seeds.empty() ? config.seeds : parse_seed_list(sweep_seeds);
            const fs::path root = resolve_output(config.output_dir) / "sweep";
            const auto summary =
                ccmarl::sweep_threshold(config, thetas, seeds, root, !sweep_serial);
            int failed = 0;
            for (const auto& cell : summary.cells) {
                if (!cell.ok) ++failed;
                std::cout << "theta=" << cell.theta << " seed=" << cell.seed << " "
                          << (cell.ok ? "ok" : ("failed: " + cell.error))
                          << " mean_final_env_return=" << cell.mean_final_env_return
                          << " mean_final_ccm=" << cell.mean_final_ccm << "\n";
            }
            std::cout << "summary: " << summary.summary_path << "\n";
            return failed == 0 ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
