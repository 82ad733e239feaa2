#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "ccmarl/env.hpp"

using namespace ccmarl;

namespace {

std::array<Vec2, kNumAgents> zero_actions() { return {}; }

}  // namespace

TEST_CASE("reset places four agents in bounds with no contact") {
    const EnvConfig config;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto state = reset(config, seed);
        REQUIRE(state.step_count == 0);
        for (int a = 0; a < kNumAgents; ++a) {
            const std::size_t i = static_cast<std::size_t>(a);
            REQUIRE(std::abs(state.position[i].x) <= config.arena_half_width);
            REQUIRE(std::abs(state.position[i].y) <= config.arena_half_width);
            REQUIRE(state.velocity[i] == Vec2{0.0, 0.0});
            REQUIRE(state.score[i] == 0.0);
        }
        for (int p = 0; p < kNumPredators; ++p)
            REQUIRE_FALSE(in_contact(config, state.position[static_cast<std::size_t>(p)],
                                     state.position[kPreyIndex]));
    }
    REQUIRE(reset(config, 7) == reset(config, 7));
}

TEST_CASE("zero action at rest is a fixed point") {
    const EnvConfig config;
    WorldState state;
    state.position = {Vec2{0.3, 0.3}, Vec2{-0.5, 0.2}, Vec2{0.1, -0.7}, Vec2{-0.2, -0.2}};
    const auto result = step(state, config, zero_actions());
    for (int a = 0; a < kNumAgents; ++a) {
        const std::size_t i = static_cast<std::size_t>(a);
        REQUIRE(result.next_state.position[i] == state.position[i]);
        REQUIRE(result.rewards[i] == 0.0);
    }
    REQUIRE_FALSE(result.done);
    REQUIRE(result.next_state.step_count == 1);
}

TEST_CASE("contact at radii-sum distance transfers reward") {
    EnvConfig config;
    config.radius_predator = 0.05;
    config.radius_prey = 0.04;  // contact distance 0.09
    WorldState state;
    state.position = {Vec2{0.0, 0.0}, Vec2{0.9, 0.9}, Vec2{-0.9, 0.9}, Vec2{0.0, 0.08}};
    const auto result = step(state, config, zero_actions());
    REQUIRE(result.contacts == std::vector<int>{0});
    REQUIRE(result.rewards[0] == 1.0);
    REQUIRE(result.rewards[1] == 0.0);
    REQUIRE(result.rewards[kPreyIndex] == -1.0);

    // just outside the contact distance
    WorldState apart = state;
    apart.position[kPreyIndex] = Vec2{0.0, 0.095};
    REQUIRE(step(apart, config, zero_actions()).contacts.empty());
}

TEST_CASE("two simultaneous contacts stay zero-sum") {
    const EnvConfig config;
    WorldState state;
    state.position = {Vec2{0.0, 0.05}, Vec2{0.0, -0.05}, Vec2{0.9, 0.9}, Vec2{0.0, 0.0}};
    const auto result = step(state, config, zero_actions());
    REQUIRE(result.contacts.size() == 2);
    REQUIRE(result.rewards[0] == 1.0);
    REQUIRE(result.rewards[1] == 1.0);
    REQUIRE(result.rewards[kPreyIndex] == -2.0);
    double sum = 0.0;
    for (const double r : result.rewards) sum += r;
    REQUIRE(sum == 0.0);
}

TEST_CASE("boundary clamps position and zeroes the normal velocity") {
    EnvConfig config;
    WorldState state;
    state.position = {Vec2{0.999, 0.0}, Vec2{-0.5, -0.5}, Vec2{0.5, 0.5}, Vec2{-0.2, 0.8}};
    state.velocity[0] = Vec2{1.0, 0.0};
    std::array<Vec2, kNumAgents> actions{};
    actions[0] = Vec2{1.0, 0.0};
    const auto result = step(state, config, actions);
    REQUIRE(result.next_state.position[0].x == config.arena_half_width);
    REQUIRE(result.next_state.velocity[0].x == 0.0);
}

TEST_CASE("velocity never exceeds the per-agent speed cap") {
    const EnvConfig config;
    WorldState state = reset(config, 3);
    Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        std::array<Vec2, kNumAgents> actions;
        for (auto& a : actions) a = Vec2{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto result = step(state, config, actions);
        state = result.next_state;
        for (int a = 0; a < kNumAgents; ++a)
            REQUIRE(state.velocity[static_cast<std::size_t>(a)].norm() <=
                    config.max_speed(a) + 1e-12);
    }
}

TEST_CASE("actions outside [-1,1] are clamped, non-finite rejected") {
    const EnvConfig config;
    WorldState state;
    state.position = {Vec2{0.0, 0.0}, Vec2{0.5, 0.5}, Vec2{-0.5, 0.5}, Vec2{0.0, 0.5}};
    std::array<Vec2, kNumAgents> big{};
    big[0] = Vec2{100.0, 0.0};
    std::array<Vec2, kNumAgents> unit{};
    unit[0] = Vec2{1.0, 0.0};
    const auto big_result = step(state, config, big);
    const auto unit_result = step(state, config, unit);
    REQUIRE(big_result.next_state.position[0] == unit_result.next_state.position[0]);

    std::array<Vec2, kNumAgents> bad{};
    bad[2] = Vec2{std::numeric_limits<double>::quiet_NaN(), 0.0};
    REQUIRE_THROWS_AS(step(state, config, bad), std::invalid_argument);
}

TEST_CASE("observation layout is own state then relative others") {
    WorldState state;
    state.position = {Vec2{0.1, 0.2}, Vec2{0.3, -0.4}, Vec2{-0.5, 0.6}, Vec2{0.7, -0.8}};
    state.velocity = {Vec2{0.01, 0.02}, Vec2{0.03, -0.04}, Vec2{-0.05, 0.06}, Vec2{0.07, -0.08}};

    const auto obs = observe(state, 1);
    REQUIRE(obs.size() == 16);
    REQUIRE(obs[0] == 0.3);
    REQUIRE(obs[1] == -0.4);
    REQUIRE(obs[2] == 0.03);
    REQUIRE(obs[3] == -0.04);
    // first other agent is 0
    REQUIRE(obs[4] == Catch::Approx(0.1 - 0.3));
    REQUIRE(obs[5] == Catch::Approx(0.2 - -0.4));
    REQUIRE(obs[6] == Catch::Approx(0.01 - 0.03));
    REQUIRE(obs[7] == Catch::Approx(0.02 - -0.04));
    // then agents 2 and 3
    REQUIRE(obs[8] == Catch::Approx(-0.5 - 0.3));
    REQUIRE(obs[12] == Catch::Approx(0.7 - 0.3));

    REQUIRE_THROWS_AS(observe(state, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(observe(state, -1), std::invalid_argument);
}

TEST_CASE("swapping two predators swaps their observations") {
    WorldState state;
    state.position = {Vec2{0.1, 0.2}, Vec2{0.3, -0.4}, Vec2{-0.5, 0.6}, Vec2{0.7, -0.8}};
    state.velocity = {Vec2{0.01, 0.02}, Vec2{0.03, -0.04}, Vec2{-0.05, 0.06}, Vec2{0.07, -0.08}};
    WorldState swapped = state;
    std::swap(swapped.position[0], swapped.position[1]);
    std::swap(swapped.velocity[0], swapped.velocity[1]);
    REQUIRE(observe(state, 0) == observe(swapped, 1));
    REQUIRE(observe(state, 1) == observe(swapped, 0));
}

TEST_CASE("scripted prey flees the nearest predator") {
    const EnvConfig config;
    WorldState state;
    state.position = {Vec2{0.0, 0.0}, Vec2{-0.9, -0.9}, Vec2{-0.9, 0.9}, Vec2{0.5, 0.0}};
    Rng rng(1);
    const Vec2 action = scripted_prey(state, config, rng, 0.0);
    REQUIRE(action.x == Catch::Approx(1.0));
    REQUIRE(action.y == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("scripted prey breaks distance ties to the lower predator index") {
    const EnvConfig config;
    WorldState state;
    // predators 0 and 1 equidistant from the prey at the origin
    state.position = {Vec2{0.4, 0.0}, Vec2{-0.4, 0.0}, Vec2{0.9, 0.9}, Vec2{0.0, 0.0}};
    Rng rng(1);
    const Vec2 action = scripted_prey(state, config, rng, 0.0);
    REQUIRE(action.x == Catch::Approx(-1.0));  // flees predator 0
}

TEST_CASE("scripted prey points inward from a corner") {
    const EnvConfig config;
    WorldState state;
    state.position = {Vec2{0.5, 0.5}, Vec2{-0.9, -0.9}, Vec2{-0.9, 0.0}, Vec2{1.0, 1.0}};
    Rng rng(1);
    const Vec2 action = scripted_prey(state, config, rng, 0.0);
    REQUIRE(action.x < 0.0);
    REQUIRE(action.y < 0.0);
}

TEST_CASE("random-action fuzz preserves the core invariants") {
    const EnvConfig config;
    WorldState state = reset(config, 99);
    Rng rng(123);
    for (int t = 0; t < 10000; ++t) {
        std::array<Vec2, kNumAgents> actions;
        for (auto& a : actions) a = Vec2{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        const auto result = step(state, config, actions);
        state = result.next_state;
        double reward_sum = 0.0;
        for (int a = 0; a < kNumAgents; ++a) {
            const std::size_t i = static_cast<std::size_t>(a);
            REQUIRE(std::abs(state.position[i].x) <= config.arena_half_width);
            REQUIRE(std::abs(state.position[i].y) <= config.arena_half_width);
            REQUIRE(state.velocity[i].norm() <= config.max_speed(a) + 1e-12);
            reward_sum += result.rewards[i];
        }
        REQUIRE(reward_sum == 0.0);
    }
}

TEST_CASE("scripted prey gains ground on stationary predators") {
    EnvConfig config;
    config.arena_half_width = 2.0;  // room to flee for the full horizon
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        WorldState state;
        state.position = {Vec2{-1.55, -0.15}, Vec2{-1.5, 0.1}, Vec2{-1.6, 0.0}, Vec2{-1.0, 0.0}};
        Rng rng(seed);
        double previous = 0.0;
        for (int t = 0; t < 20; ++t) {
            double nearest = 1e300;
            for (int p = 0; p < kNumPredators; ++p)
                nearest = std::min(nearest, distance(state.position[kPreyIndex],
                                                     state.position[static_cast<std::size_t>(p)]));
            if (t == 0) {
                REQUIRE(nearest >= config.contact_distance());  // non-contact start
            } else {
                REQUIRE(nearest >= previous);
            }
            previous = nearest;
            std::array<Vec2, kNumAgents> actions{};  // predators stay put
            actions[kPreyIndex] = scripted_prey(state, config, rng);
            state = step(state, config, actions).next_state;
        }
    }
}

TEST_CASE("done flag fires exactly at episode length") {
    EnvConfig config;
    config.episode_length = 3;
    WorldState state = reset(config, 1);
    auto r1 = step(state, config, zero_actions());
    REQUIRE_FALSE(r1.done);
    auto r2 = step(r1.next_state, config, zero_actions());
    REQUIRE_FALSE(r2.done);
    auto r3 = step(r2.next_state, config, zero_actions());
    REQUIRE(r3.done);
}

TEST_CASE("config validation rejects bad fields") {
    EnvConfig config;
    config.damping = 1.0;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    config = EnvConfig{};
    config.radius_predator = 0.6;
    config.radius_prey = 0.5;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    config = EnvConfig{};
    config.dt = 0.0;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
}
