#pragma once

// Per-episode metrics as JSON lines: append-only, one record per episode,
// every record stamped with the digest of the config that produced it.

#include <array>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccmarl/coordination.hpp"
#include "ccmarl/env.hpp"

namespace ccmarl {

struct EpisodeMetrics {
    int episode = 0;
    std::array<double, kNumAgents> env_return{};  // undiscounted per-agent sum
    std::array<double, kNumAgents> bonus{};
    int contacts = 0;
    CoordinationSummary summary;
    std::array<double, kNumPredators> grad_norm{};
    std::array<double, kNumPredators> advantage{};
    std::array<double, kNumPredators> shaped_return{};  // discounted + bonus
};

inline nlohmann::json metrics_to_json(const EpisodeMetrics& m, const std::string& digest) {
    nlohmann::json pair_scores = nlohmann::json::array();
    for (int i = 0; i < m.summary.agent_count; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.summary.agent_count; ++j) row.push_back(m.summary.score(i, j));
        pair_scores.push_back(row);
    }
    return nlohmann::json{{"episode", m.episode},
                          {"config_digest", digest},
                          {"env_return", m.env_return},
                          {"bonus", m.bonus},
                          {"contacts", m.contacts},
                          {"ccm",
                           {{"pair_scores", pair_scores},
                            {"per_agent_mean", m.summary.per_agent_mean},
                            {"overall_mean", m.summary.overall_mean}}},
                          {"grad_norm", m.grad_norm},
                          {"advantage", m.advantage},
                          {"shaped_return", m.shaped_return}};
}

class MetricsWriter {
  public:
    MetricsWriter(const std::string& path, std::string digest)
        : out_(path), digest_(std::move(digest)) {
        if (!out_) throw std::runtime_error("metrics: cannot write '" + path + "'");
    }

    void append(const EpisodeMetrics& m) {
        out_ << metrics_to_json(m, digest_).dump() << '\n';
        out_.flush();
    }

    // Marks an aborted run; readers can tell a truncated file from a finished one.
    void truncate_marker(const std::string& error) {
        out_ << nlohmann::json{{"truncated", true}, {"error", error}, {"config_digest", digest_}}
                    .dump()
             << '\n';
        out_.flush();
    }

  private:
    std::ofstream out_;
    std::string digest_;
};

struct RunArtifacts {
    std::string run_dir;
    std::string metrics_path;
    std::vector<std::string> checkpoint_paths;
    std::string config_digest;
    double wall_seconds = 0.0;
    std::vector<EpisodeMetrics> metrics;  // in-memory copy for aggregation
};

}  // namespace ccmarl
