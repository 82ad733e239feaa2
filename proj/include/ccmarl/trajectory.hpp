#pragma once

// Episode rollout and the per-agent trajectory record. All randomness is
// derived from one episode seed: one action stream per agent plus one
// placement stream, so a rollout is replayable bit for bit.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/csv.hpp"
#include "ccmarl/env.hpp"
#include "ccmarl/policy.hpp"
#include "ccmarl/rng.hpp"
#include "ccmarl/vec2.hpp"

namespace ccmarl {

namespace seed_tag {
inline constexpr std::uint64_t reset = 0x5245534554ULL;
inline constexpr std::uint64_t action = 0x414354ULL;
inline constexpr std::uint64_t rollout = 0x524f4cULL;
inline constexpr std::uint64_t ccm = 0x43434dULL;
inline constexpr std::uint64_t policy = 0x504f4cULL;
}  // namespace seed_tag

struct AgentTrajectory {
    std::vector<std::array<double, kObsDim>> observations;
    std::vector<Vec2> raw_actions;  // pre-clamp, what the log-prob refers to
    std::vector<Vec2> actions;      // emitted, clamped
    std::vector<double> log_probs;  // zero for scripted agents
    std::vector<double> rewards;
    bool scripted = false;
};

struct TrajectoryBatch {
    std::array<AgentTrajectory, kNumAgents> agents;
    std::vector<int> step_index;
    std::vector<std::array<Vec2, kNumAgents>> positions;   // post-step
    std::vector<std::array<Vec2, kNumAgents>> velocities;  // post-step
    std::vector<int> contact_counts;
    std::uint64_t seed = 0;
    std::string config_digest;
    EnvConfig env_config;

    int length() const { return static_cast<int>(step_index.size()); }
    int total_contacts() const {
        int total = 0;
        for (const int c : contact_counts) total += c;
        return total;
    }
};

// Runs one episode of `T` steps. Predators act through their policies; the
// prey uses the scripted controller unless a prey policy is given.
inline TrajectoryBatch rollout(const EnvConfig& config,
                               const std::array<PolicyParams, kNumPredators>& predators,
                               const std::optional<PolicyParams>& prey_policy, int T,
                               std::uint64_t seed, bool deterministic = false) {
    if (T < 1) throw std::invalid_argument("rollout: episode length must be >= 1");

    TrajectoryBatch batch;
    batch.seed = seed;
    batch.env_config = config;

    WorldState state = reset(config, derive_seed(seed, seed_tag::reset));
    std::vector<Rng> action_rngs;
    action_rngs.reserve(kNumAgents);
    for (int a = 0; a < kNumAgents; ++a)
        action_rngs.emplace_back(derive_seed(seed, seed_tag::action, static_cast<std::uint64_t>(a)));
    batch.agents[kPreyIndex].scripted = !prey_policy.has_value();

    for (int t = 0; t < T; ++t) {
        std::array<Vec2, kNumAgents> joint_action;
        for (int a = 0; a < kNumAgents; ++a) {
            const std::size_t i = static_cast<std::size_t>(a);
            const auto obs = observe(state, a);
            ActionSample sample;
            if (a == kPreyIndex && !prey_policy) {
                const Vec2 act = scripted_prey(state, config, action_rngs[i]);
                sample = {act, act, 0.0};
            } else {
                const PolicyParams& params =
                    (a == kPreyIndex) ? *prey_policy : predators[i];
                sample = policy_act(params, obs, action_rngs[i], deterministic);
            }
            joint_action[i] = sample.action;
            batch.agents[i].observations.push_back(obs);
            batch.agents[i].raw_actions.push_back(sample.raw_action);
            batch.agents[i].actions.push_back(sample.action);
            batch.agents[i].log_probs.push_back(sample.log_prob);
        }

        const StepResult result = step(state, config, joint_action);
        for (int a = 0; a < kNumAgents; ++a)
            batch.agents[static_cast<std::size_t>(a)].rewards.push_back(
                result.rewards[static_cast<std::size_t>(a)]);
        batch.step_index.push_back(t);
        batch.positions.push_back(result.next_state.position);
        batch.velocities.push_back(result.next_state.velocity);
        batch.contact_counts.push_back(static_cast<int>(result.contacts.size()));
        state = result.next_state;
    }
    return batch;
}

// One record per step per agent; positions and velocities are the values
// after the step's integration, alongside the action that produced them.
inline void write_trajectory_header(std::ostream& out) {
    out << "episode,step,agent_id,px,py,vx,vy,ax,ay,reward\n";
}

inline void append_trajectory_csv(std::ostream& out, const TrajectoryBatch& batch, int episode) {
    for (int t = 0; t < batch.length(); ++t) {
        for (int a = 0; a < kNumAgents; ++a) {
            const std::size_t i = static_cast<std::size_t>(a);
            out << episode << ',' << batch.step_index[static_cast<std::size_t>(t)] << ',' << a
                << ',';
            format_double(out, batch.positions[static_cast<std::size_t>(t)][i].x);
            out << ',';
            format_double(out, batch.positions[static_cast<std::size_t>(t)][i].y);
            out << ',';
            format_double(out, batch.velocities[static_cast<std::size_t>(t)][i].x);
            out << ',';
            format_double(out, batch.velocities[static_cast<std::size_t>(t)][i].y);
            out << ',';
            format_double(out, batch.agents[i].actions[static_cast<std::size_t>(t)].x);
            out << ',';
            format_double(out, batch.agents[i].actions[static_cast<std::size_t>(t)].y);
            out << ',';
            format_double(out, batch.agents[i].rewards[static_cast<std::size_t>(t)]);
            out << '\n';
        }
    }
}

}  // namespace ccmarl
