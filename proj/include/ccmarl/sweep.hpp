#pragma once

// Threshold sweep: one independent training run per (theta, seed) cell.
// Cells own their output directories and share nothing, so they may run in
// parallel without affecting results. Failures are recorded per cell and do
// not stop the sweep.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ccmarl/csv.hpp"
#include "ccmarl/training.hpp"

namespace ccmarl {

struct SweepCell {
    double theta = 0.0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double mean_final_env_return = 0.0;  // per-predator mean over the final window
    double mean_final_ccm = 0.0;         // overall_mean over the final window
    std::string run_dir;
};

struct SweepSummary {
    std::vector<SweepCell> cells;
    std::string summary_path;
};

inline std::string format_theta(double theta) {
    std::ostringstream s;
    s << theta;
    return s.str();
}

inline SweepCell run_sweep_cell(const ExperimentConfig& base, double theta, std::uint64_t seed,
                                const std::filesystem::path& sweep_root) {
    SweepCell cell;
    cell.theta = theta;
    cell.seed = seed;
    ExperimentConfig config = base;
    config.shaping.theta = theta;
    const std::filesystem::path run_dir =
        sweep_root / ("theta_" + format_theta(theta)) / ("seed_" + std::to_string(seed));
    cell.run_dir = run_dir.string();
    try {
        const RunArtifacts artifacts = run_training(config, seed, run_dir);
        const int window = final_window_size(config.episodes);
        const int first = config.episodes - window;
        double ret = 0.0, ccm = 0.0;
        for (int ep = first; ep < config.episodes; ++ep) {
            const auto& m = artifacts.metrics[static_cast<std::size_t>(ep)];
            double predator_mean = 0.0;
            for (int a = 0; a < kNumPredators; ++a)
                predator_mean += m.env_return[static_cast<std::size_t>(a)];
            ret += predator_mean / kNumPredators;
            ccm += m.summary.overall_mean;
        }
        cell.mean_final_env_return = ret / window;
        cell.mean_final_ccm = ccm / window;
        cell.ok = true;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
    }
    return cell;
}

inline SweepSummary sweep_threshold(const ExperimentConfig& base,
                                    const std::vector<double>& theta_list,
                                    const std::vector<std::uint64_t>& seeds,
                                    const std::filesystem::path& sweep_root,
                                    bool parallel = true) {
    if (theta_list.empty()) throw std::invalid_argument("sweep_threshold: empty theta list");
    if (seeds.empty()) throw std::invalid_argument("sweep_threshold: empty seed list");
    std::filesystem::create_directories(sweep_root);

    struct Job {
        double theta;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const double theta : theta_list)
        for (const std::uint64_t seed : seeds) jobs.push_back({theta, seed});

    SweepSummary summary;
    summary.cells.resize(jobs.size());

    const unsigned workers =
        parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            summary.cells[i] = run_sweep_cell(base, jobs[i].theta, jobs[i].seed, sweep_root);
        }
    };
    if (workers > 1) {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    } else {
        worker();
    }

    const std::filesystem::path path = sweep_root / "sweep_summary.csv";
    std::ofstream out(path);
    out << "theta,seed,status,mean_final_env_return,mean_final_ccm,run_dir\n";
    for (const auto& cell : summary.cells) {
        out << format_theta(cell.theta) << ',' << cell.seed << ','
            << (cell.ok ? "ok" : "failed") << ',';
        format_double(out, cell.mean_final_env_return);
        out << ',';
        format_double(out, cell.mean_final_ccm);
        out << ',' << cell.run_dir << '\n';
    }
    summary.summary_path = path.string();
    return summary;
}

}  // namespace ccmarl
