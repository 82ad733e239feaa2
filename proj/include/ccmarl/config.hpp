#pragma once

// Experiment configuration: one JSON file, strict. Unknown keys are errors,
// constraint violations name the offending field path, and absent fields
// take the documented defaults. Misconfigured runs should fail loudly, not
// silently produce the wrong science.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccmarl/embedding.hpp"
#include "ccmarl/env.hpp"
#include "ccmarl/reinforce.hpp"
#include "ccmarl/shaping.hpp"

namespace ccmarl {

using json = nlohmann::json;

struct CcmConfig {
    EmbeddingParams embedding;  // E=3, tau=1, theiler=(E-1)*tau unless given
    int L = 80;                 // default library size for single-L scores
    int n_draws = 32;           // library draws per size in reported curves

    bool operator==(const CcmConfig&) const = default;
};

struct ExperimentConfig {
    EnvConfig env;
    ShapingConfig shaping;
    LearnerHyper learner;
    CcmConfig ccm;
    int episodes = 2000;
    std::vector<std::uint64_t> seeds = {1};
    std::string output_dir = "runs";

    bool operator==(const ExperimentConfig&) const = default;
};

inline std::string to_string(PairSelection p) {
    return p == PairSelection::predators_only ? "predators_only" : "all_pairs";
}
inline std::string to_string(Scalarization s) {
    return s == Scalarization::x_component ? "x_component_mean" : "heading_angle";
}
inline std::string to_string(PenaltyKind p) {
    return p == PenaltyKind::absolute ? "absolute" : "squared";
}

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                                const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        bool found = false;
        for (const auto& k : known)
            if (k == key) {
                found = true;
                break;
            }
        if (!found)
            throw std::invalid_argument("config: unknown key '" +
                                        (path.empty() ? key : path + "." + key) + "'");
    }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& path) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config: wrong type for '" +
                                    (path.empty() ? key : path + "." + std::string(key)) + "'");
    }
}

inline void read_enum(const json& obj, const char* key, PairSelection& out,
                      const std::string& path) {
    if (!obj.contains(key)) return;
    const std::string v = obj.at(key).get<std::string>();
    if (v == "predators_only") out = PairSelection::predators_only;
    else if (v == "all_pairs") out = PairSelection::all_pairs;
    else
        throw std::invalid_argument("config: invalid value '" + v + "' for '" + path + "." + key +
                                    "' (expected predators_only or all_pairs)");
}

inline void read_enum(const json& obj, const char* key, Scalarization& out,
                      const std::string& path) {
    if (!obj.contains(key)) return;
    const std::string v = obj.at(key).get<std::string>();
    if (v == "x_component_mean") out = Scalarization::x_component;
    else if (v == "heading_angle") out = Scalarization::heading_angle;
    else
        throw std::invalid_argument("config: invalid value '" + v + "' for '" + path + "." + key +
                                    "' (expected x_component_mean or heading_angle)");
}

inline void read_enum(const json& obj, const char* key, PenaltyKind& out,
                      const std::string& path) {
    if (!obj.contains(key)) return;
    const std::string v = obj.at(key).get<std::string>();
    if (v == "absolute") out = PenaltyKind::absolute;
    else if (v == "squared") out = PenaltyKind::squared;
    else
        throw std::invalid_argument("config: invalid value '" + v + "' for '" + path + "." + key +
                                    "' (expected absolute or squared)");
}

inline void check(bool ok, const std::string& field, const std::string& requirement) {
    if (!ok)
        throw std::invalid_argument("config: constraint violation at '" + field + "': " +
                                    requirement);
}

}  // namespace detail

inline json config_to_json(const ExperimentConfig& c) {
    json j;
    j["env"] = {{"arena_half_width", c.env.arena_half_width},
                {"dt", c.env.dt},
                {"damping", c.env.damping},
                {"max_speed_predator", c.env.max_speed_predator},
                {"max_speed_prey", c.env.max_speed_prey},
                {"radius_predator", c.env.radius_predator},
                {"radius_prey", c.env.radius_prey},
                {"accel_scale", c.env.accel_scale},
                {"episode_length", c.env.episode_length},
                {"contact_reward", c.env.contact_reward}};
    j["shaping"] = {{"theta", c.shaping.theta},
                    {"kappa", c.shaping.kappa},
                    {"ccm_L", c.shaping.ccm_L},
                    {"ccm_draws", c.shaping.ccm_draws},
                    {"pairs", to_string(c.shaping.pairs)},
                    {"scalarization", to_string(c.shaping.scalarization)},
                    {"penalty", to_string(c.shaping.penalty)}};
    j["learner"] = {{"lr", c.learner.lr},
                    {"gamma", c.learner.gamma},
                    {"baseline_momentum", c.learner.baseline_momentum}};
    j["ccm"] = {{"E", c.ccm.embedding.E},
                {"tau", c.ccm.embedding.tau},
                {"theiler", c.ccm.embedding.theiler},
                {"L", c.ccm.L},
                {"n_draws", c.ccm.n_draws}};
    j["episodes"] = c.episodes;
    j["seeds"] = c.seeds;
    j["output_dir"] = c.output_dir;
    return j;
}

// Cross-field checks live here so that a config that loads is a config that
// runs.
inline void validate_config(const ExperimentConfig& c) {
    using detail::check;
    check(c.env.arena_half_width > 0.0, "env.arena_half_width", "must be positive");
    check(c.env.dt > 0.0, "env.dt", "must be positive");
    check(c.env.damping >= 0.0 && c.env.damping < 1.0, "env.damping", "must be in [0, 1)");
    check(c.env.max_speed_predator > 0.0, "env.max_speed_predator", "must be positive");
    check(c.env.max_speed_prey > 0.0, "env.max_speed_prey", "must be positive");
    check(c.env.radius_predator > 0.0, "env.radius_predator", "must be positive");
    check(c.env.radius_prey > 0.0, "env.radius_prey", "must be positive");
    check(c.env.radius_predator + c.env.radius_prey < c.env.arena_half_width,
          "env.radius_predator", "radii sum must be below arena_half_width");
    check(c.env.accel_scale > 0.0, "env.accel_scale", "must be positive");
    check(c.env.episode_length >= 1, "env.episode_length", "must be >= 1");
    check(c.env.contact_reward > 0.0, "env.contact_reward", "must be positive");

    check(c.shaping.theta >= 0.0 && c.shaping.theta <= 1.0, "shaping.theta",
          "must be in [0, 1]");
    check(c.shaping.kappa >= 0.0, "shaping.kappa", "must be >= 0");
    check(c.shaping.ccm_L >= c.ccm.embedding.E + 2, "shaping.ccm_L", "must be at least E+2");
    check(c.shaping.ccm_draws >= 1, "shaping.ccm_draws", "must be >= 1");

    check(c.learner.lr >= 0.0, "learner.lr", "must be >= 0");
    check(c.learner.gamma >= 0.0 && c.learner.gamma <= 1.0, "learner.gamma",
          "must be in [0, 1]");
    check(c.learner.baseline_momentum >= 0.0 && c.learner.baseline_momentum < 1.0,
          "learner.baseline_momentum", "must be in [0, 1)");

    check(c.ccm.embedding.E >= 1, "ccm.E", "must be >= 1");
    check(c.ccm.embedding.tau >= 1, "ccm.tau", "must be >= 1");
    check(c.ccm.embedding.theiler >= 0, "ccm.theiler", "must be >= 0");
    check(c.ccm.L >= c.ccm.embedding.E + 2, "ccm.L", "must be at least E+2");
    check(c.ccm.n_draws >= 1, "ccm.n_draws", "must be >= 1");

    check(c.episodes >= 1, "episodes", "must be >= 1");
    check(!c.seeds.empty(), "seeds", "must be non-empty");
    check(!c.output_dir.empty(), "output_dir", "must be non-empty");

    // The episode must be long enough to embed and to fill the library.
    const int min_len = shaping_min_episode_length(c.shaping, c.ccm.embedding);
    check(c.env.episode_length >= min_len, "env.episode_length",
          "must be >= " + std::to_string(min_len) +
              " so one episode supports a ccm library of shaping.ccm_L points");
}

inline ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    detail::reject_unknown_keys(
        j, {"env", "shaping", "learner", "ccm", "episodes", "seeds", "output_dir"}, "");

    ExperimentConfig c;
    using detail::read_field;

    if (j.contains("env")) {
        const json& e = j.at("env");
        detail::reject_unknown_keys(
            e,
            {"arena_half_width", "dt", "damping", "max_speed_predator", "max_speed_prey",
             "radius_predator", "radius_prey", "accel_scale", "episode_length", "contact_reward"},
            "env");
        read_field(e, "arena_half_width", c.env.arena_half_width, "env");
        read_field(e, "dt", c.env.dt, "env");
        read_field(e, "damping", c.env.damping, "env");
        read_field(e, "max_speed_predator", c.env.max_speed_predator, "env");
        read_field(e, "max_speed_prey", c.env.max_speed_prey, "env");
        read_field(e, "radius_predator", c.env.radius_predator, "env");
        read_field(e, "radius_prey", c.env.radius_prey, "env");
        read_field(e, "accel_scale", c.env.accel_scale, "env");
        read_field(e, "episode_length", c.env.episode_length, "env");
        read_field(e, "contact_reward", c.env.contact_reward, "env");
    }

    if (j.contains("ccm")) {
        const json& m = j.at("ccm");
        detail::reject_unknown_keys(m, {"E", "tau", "theiler", "L", "n_draws"}, "ccm");
        read_field(m, "E", c.ccm.embedding.E, "ccm");
        read_field(m, "tau", c.ccm.embedding.tau, "ccm");
        if (m.contains("theiler"))
            read_field(m, "theiler", c.ccm.embedding.theiler, "ccm");
        else
            c.ccm.embedding.theiler =
                EmbeddingParams::default_theiler(c.ccm.embedding.E, c.ccm.embedding.tau);
        read_field(m, "L", c.ccm.L, "ccm");
        read_field(m, "n_draws", c.ccm.n_draws, "ccm");
    }

    if (j.contains("shaping")) {
        const json& s = j.at("shaping");
        detail::reject_unknown_keys(
            s, {"theta", "kappa", "ccm_L", "ccm_draws", "pairs", "scalarization", "penalty"},
            "shaping");
        read_field(s, "theta", c.shaping.theta, "shaping");
        read_field(s, "kappa", c.shaping.kappa, "shaping");
        if (s.contains("ccm_L"))
            read_field(s, "ccm_L", c.shaping.ccm_L, "shaping");
        else
            c.shaping.ccm_L = c.ccm.L;
        read_field(s, "ccm_draws", c.shaping.ccm_draws, "shaping");
        detail::read_enum(s, "pairs", c.shaping.pairs, "shaping");
        detail::read_enum(s, "scalarization", c.shaping.scalarization, "shaping");
        detail::read_enum(s, "penalty", c.shaping.penalty, "shaping");
    } else {
        c.shaping.ccm_L = c.ccm.L;
    }

    if (j.contains("learner")) {
        const json& l = j.at("learner");
        detail::reject_unknown_keys(l, {"lr", "gamma", "baseline_momentum"}, "learner");
        read_field(l, "lr", c.learner.lr, "learner");
        read_field(l, "gamma", c.learner.gamma, "learner");
        read_field(l, "baseline_momentum", c.learner.baseline_momentum, "learner");
    }

    read_field(j, "episodes", c.episodes, "");
    read_field(j, "seeds", c.seeds, "");
    read_field(j, "output_dir", c.output_dir, "");

    validate_config(c);
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: malformed JSON in '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

// Stable hex digest of the canonical (key-sorted) config serialization.
inline std::string config_digest(const ExperimentConfig& c) {
    std::ostringstream hex;
    hex << std::hex;
    const std::uint64_t h = fnv1a64(config_to_json(c).dump());
    for (int shift = 60; shift >= 0; shift -= 4) hex << ((h >> shift) & 0xF);
    return hex.str();
}

}  // namespace ccmarl
