#pragma once

// Continuous bounded 2D pursuit arena: three identical predators chase a
// single faster prey. Predators score on every step they are in contact
// with the prey; the prey loses the same amount, so per-step rewards sum to
// zero. Agents are point particles with damped velocity integration and may
// pass through each other.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/rng.hpp"
#include "ccmarl/vec2.hpp"

namespace ccmarl {

inline constexpr int kNumPredators = 3;
inline constexpr int kNumAgents = 4;
inline constexpr int kPreyIndex = 3;
inline constexpr int kObsDim = 16;  // own pos/vel + relative pos/vel of 3 others

// The prey outruns the predators, so contact requires pursuit; episode
// length keeps a whole trial inside the gamma=0.95 credit horizon.
struct EnvConfig {
    double arena_half_width = 1.0;
    double dt = 0.1;
    double damping = 0.25;  // per-step velocity drag; retention is 1 - damping
    double max_speed_predator = 1.0;
    double max_speed_prey = 1.3;
    double radius_predator = 0.075;
    double radius_prey = 0.055;
    double accel_scale = 3.0;  // maps unit actions to acceleration
    int episode_length = 100;
    double contact_reward = 1.0;

    double max_speed(int agent) const {
        return agent == kPreyIndex ? max_speed_prey : max_speed_predator;
    }
    double contact_distance() const { return radius_predator + radius_prey; }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0))
                throw std::invalid_argument(std::string("EnvConfig: ") + name +
                                            " must be positive");
        };
        positive(arena_half_width, "arena_half_width");
        positive(dt, "dt");
        positive(max_speed_predator, "max_speed_predator");
        positive(max_speed_prey, "max_speed_prey");
        positive(radius_predator, "radius_predator");
        positive(radius_prey, "radius_prey");
        positive(accel_scale, "accel_scale");
        positive(contact_reward, "contact_reward");
        if (episode_length < 1)
            throw std::invalid_argument("EnvConfig: episode_length must be >= 1");
        if (damping < 0.0 || damping >= 1.0)
            throw std::invalid_argument("EnvConfig: damping must be in [0, 1)");
        if (radius_predator + radius_prey >= arena_half_width)
            throw std::invalid_argument("EnvConfig: radii sum must be below arena_half_width");
    }

    bool operator==(const EnvConfig&) const = default;
};

struct WorldState {
    std::array<Vec2, kNumAgents> position;
    std::array<Vec2, kNumAgents> velocity;
    std::array<double, kNumAgents> score{};
    int step_count = 0;

    bool operator==(const WorldState&) const = default;
};

struct StepResult {
    WorldState next_state;
    std::array<double, kNumAgents> rewards{};
    std::vector<int> contacts;  // predator indices in contact with the prey
    bool done = false;
};

inline bool in_contact(const EnvConfig& config, const Vec2& predator, const Vec2& prey) {
    return distance(predator, prey) < config.contact_distance();
}

// Uniform placement of all four agents, rejection-resampled until no
// predator starts in contact with the prey. Velocities and scores start at
// zero.
inline WorldState reset(const EnvConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    const double hw = config.arena_half_width;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        WorldState state;
        for (int a = 0; a < kNumAgents; ++a)
            state.position[static_cast<std::size_t>(a)] = {rng.uniform(-hw, hw),
                                                           rng.uniform(-hw, hw)};
        bool contact = false;
        for (int p = 0; p < kNumPredators; ++p)
            contact |= in_contact(config, state.position[static_cast<std::size_t>(p)],
                                  state.position[kPreyIndex]);
        if (!contact) return state;
    }
    throw std::runtime_error("reset: could not place agents without contact in 1000 attempts");
}

// Semi-implicit update: v <- (1 - damping) v + accel_scale * a * dt, clipped
// to the agent's speed cap; p <- p + v dt, clamped to the arena with the
// normal velocity component zeroed at the walls.
inline StepResult step(const WorldState& state, const EnvConfig& config,
                       const std::array<Vec2, kNumAgents>& joint_action) {
    for (int a = 0; a < kNumAgents; ++a) {
        const Vec2& act = joint_action[static_cast<std::size_t>(a)];
        if (!std::isfinite(act.x) || !std::isfinite(act.y))
            throw std::invalid_argument("step: non-finite action for agent " + std::to_string(a));
    }

    StepResult result;
    result.next_state = state;
    WorldState& next = result.next_state;
    const double hw = config.arena_half_width;

    for (int a = 0; a < kNumAgents; ++a) {
        const std::size_t i = static_cast<std::size_t>(a);
        const Vec2 act = clamp_components(joint_action[i], -1.0, 1.0);
        Vec2 v = next.velocity[i] * (1.0 - config.damping) + act * (config.accel_scale * config.dt);
        const double speed = v.norm();
        const double cap = config.max_speed(a);
        if (speed > cap) v = v * (cap / speed);
        Vec2 p = next.position[i] + v * config.dt;
        if (p.x > hw) { p.x = hw; v.x = 0.0; }
        if (p.x < -hw) { p.x = -hw; v.x = 0.0; }
        if (p.y > hw) { p.y = hw; v.y = 0.0; }
        if (p.y < -hw) { p.y = -hw; v.y = 0.0; }
        next.velocity[i] = v;
        next.position[i] = p;
    }

    double predator_total = 0.0;
    for (int p = 0; p < kNumPredators; ++p) {
        if (in_contact(config, next.position[static_cast<std::size_t>(p)],
                       next.position[kPreyIndex])) {
            result.contacts.push_back(p);
            result.rewards[static_cast<std::size_t>(p)] = config.contact_reward;
            predator_total += config.contact_reward;
        }
    }
    result.rewards[kPreyIndex] = -predator_total;

    for (int a = 0; a < kNumAgents; ++a)
        next.score[static_cast<std::size_t>(a)] += result.rewards[static_cast<std::size_t>(a)];
    next.step_count = state.step_count + 1;
    result.done = next.step_count >= config.episode_length;
    return result;
}

// Fixed-layout observation: own position, own velocity, then for each other
// agent in index order its relative position and relative velocity.
inline std::array<double, kObsDim> observe(const WorldState& state, int agent_id) {
    if (agent_id < 0 || agent_id >= kNumAgents)
        throw std::invalid_argument("observe: invalid agent id " + std::to_string(agent_id));
    const std::size_t self = static_cast<std::size_t>(agent_id);
    std::array<double, kObsDim> obs{};
    obs[0] = state.position[self].x;
    obs[1] = state.position[self].y;
    obs[2] = state.velocity[self].x;
    obs[3] = state.velocity[self].y;
    int slot = 4;
    for (int other = 0; other < kNumAgents; ++other) {
        if (other == agent_id) continue;
        const std::size_t o = static_cast<std::size_t>(other);
        obs[static_cast<std::size_t>(slot++)] = state.position[o].x - state.position[self].x;
        obs[static_cast<std::size_t>(slot++)] = state.position[o].y - state.position[self].y;
        obs[static_cast<std::size_t>(slot++)] = state.velocity[o].x - state.velocity[self].x;
        obs[static_cast<std::size_t>(slot++)] = state.velocity[o].y - state.velocity[self].y;
    }
    return obs;
}

// Evasion controller for the prey: unit acceleration away from the nearest
// predator (ties to the lower index), an inward wall-repulsion term whose
// weight grows quadratically inside the outer 10% of the arena, and Gaussian
// jitter. Components clamp to [-1, 1].
inline Vec2 scripted_prey(const WorldState& state, const EnvConfig& config, Rng& rng,
                          double jitter_sigma = 0.05) {
    const Vec2 prey = state.position[kPreyIndex];
    int nearest = 0;
    double best = distance(prey, state.position[0]);
    for (int p = 1; p < kNumPredators; ++p) {
        const double d = distance(prey, state.position[static_cast<std::size_t>(p)]);
        if (d < best) {
            best = d;
            nearest = p;
        }
    }

    Vec2 flee{0.0, 0.0};
    const Vec2 away = prey - state.position[static_cast<std::size_t>(nearest)];
    const double away_norm = away.norm();
    if (away_norm > 0.0) flee = away * (1.0 / away_norm);

    const double hw = config.arena_half_width;
    const double margin = 0.1 * hw;
    auto wall_push = [&](double coord) {
        const double depth = std::abs(coord) - (hw - margin);
        if (depth <= 0.0) return 0.0;
        const double w = depth / margin;
        return (coord > 0.0 ? -2.0 : 2.0) * w * w;
    };

    Vec2 action = flee + Vec2{wall_push(prey.x), wall_push(prey.y)};
    if (jitter_sigma > 0.0) {
        action.x += rng.normal(0.0, jitter_sigma);
        action.y += rng.normal(0.0, jitter_sigma);
    }
    return clamp_components(action, -1.0, 1.0);
}

}  // namespace ccmarl
