#pragma once

// One training run: rollout, coordination bonus, one REINFORCE update per
// predator per episode, metrics appended as the run progresses, checkpoints
// at the end. Every stream of randomness derives from (run seed, episode),
// so a run is a pure function of (config, seed).

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "ccmarl/checkpoint.hpp"
#include "ccmarl/config.hpp"
#include "ccmarl/metrics.hpp"
#include "ccmarl/reinforce.hpp"
#include "ccmarl/shaping.hpp"
#include "ccmarl/trajectory.hpp"

namespace ccmarl {

// Configs arriving through load_config are already validated; a config that
// still cannot run fails inside the episode loop and leaves a truncation
// marker in the metrics file.
inline RunArtifacts run_training(const ExperimentConfig& config, std::uint64_t seed,
                                 const std::filesystem::path& run_dir) {
    const auto start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(run_dir);

    const std::string digest = config_digest(config);
    RunArtifacts artifacts;
    artifacts.run_dir = run_dir.string();
    artifacts.config_digest = digest;
    artifacts.metrics_path = (run_dir / "metrics.jsonl").string();

    {
        std::ofstream cfg(run_dir / "config.json");
        cfg << config_to_json(config).dump(2) << '\n';
    }

    MetricsWriter writer(artifacts.metrics_path, digest);

    std::array<PolicyParams, kNumPredators> policies;
    std::array<double, kNumPredators> baselines{};
    for (int a = 0; a < kNumPredators; ++a)
        policies[static_cast<std::size_t>(a)] =
            policy_init(derive_seed(seed, seed_tag::policy, static_cast<std::uint64_t>(a)));

    try {
        for (int ep = 0; ep < config.episodes; ++ep) {
            auto batch =
                rollout(config.env, policies, std::nullopt, config.env.episode_length,
                        derive_seed(seed, seed_tag::rollout, static_cast<std::uint64_t>(ep)));
            batch.config_digest = digest;
            const auto shaped =
                coordination_bonus(batch, config.shaping, config.ccm.embedding,
                                   derive_seed(seed, seed_tag::ccm, static_cast<std::uint64_t>(ep)));

            EpisodeMetrics m;
            m.episode = ep;
            m.summary = shaped.summary;
            m.bonus = shaped.bonus;
            m.contacts = batch.total_contacts();
            for (int a = 0; a < kNumAgents; ++a) {
                double total = 0.0;
                for (const double r : batch.agents[static_cast<std::size_t>(a)].rewards)
                    total += r;
                m.env_return[static_cast<std::size_t>(a)] = total;
            }

            for (int a = 0; a < kNumPredators; ++a) {
                const std::size_t i = static_cast<std::size_t>(a);
                const auto result = reinforce_update(policies[i], baselines[i], batch.agents[i],
                                                     shaped.bonus[i], config.learner);
                policies[i] = result.params;
                baselines[i] = result.baseline;
                m.grad_norm[i] = result.stats.grad_norm;
                m.advantage[i] = result.stats.advantage;
                m.shaped_return[i] = result.stats.episode_return;
            }

            writer.append(m);
            artifacts.metrics.push_back(std::move(m));
        }
    } catch (const std::exception& e) {
        writer.truncate_marker(e.what());
        throw;
    }

    for (int a = 0; a < kNumPredators; ++a) {
        const std::string path = (run_dir / ("checkpoint_agent" + std::to_string(a) + ".txt")).string();
        save_checkpoint(path, {policies[static_cast<std::size_t>(a)],
                               baselines[static_cast<std::size_t>(a)]});
        artifacts.checkpoint_paths.push_back(path);
    }

    artifacts.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    {
        std::ofstream info(run_dir / "run_info.json");
        info << nlohmann::json{{"seed", seed},
                               {"config_digest", digest},
                               {"episodes", config.episodes},
                               {"wall_seconds", artifacts.wall_seconds}}
                    .dump(2)
             << '\n';
    }
    return artifacts;
}

// Mean over the last max(1, episodes/10) episodes; the report-time proxy for
// "where training ended up".
inline int final_window_size(int episodes) { return std::max(1, episodes / 10); }

}  // namespace ccmarl
