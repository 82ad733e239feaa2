#pragma once

// Exact nearest-neighbor queries on a shadow manifold. The point clouds
// here are small (at most a few thousand points, E <= 8), so a linear scan
// with a bounded insertion list beats any spatial index and keeps the
// ordering fully deterministic: ascending distance, ties broken by lower
// point index.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccmarl/embedding.hpp"

namespace ccmarl {

struct Neighbor {
    int index = -1;
    double distance = 0.0;
};

inline double point_distance(const ShadowManifold& manifold, int a, int b) {
    const double* pa = manifold.point(a);
    const double* pb = manifold.point(b);
    double sum = 0.0;
    for (int d = 0; d < manifold.params.E; ++d) {
        const double diff = pa[d] - pb[d];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

// A candidate is admissible if it is not the query itself and its time
// index differs from the query's by more than the Theiler window.
inline bool admissible_neighbor(const ShadowManifold& manifold, int query_index, int candidate) {
    if (candidate == query_index) return false;
    const int dt = manifold.time_index[static_cast<std::size_t>(candidate)] -
                   manifold.time_index[static_cast<std::size_t>(query_index)];
    return (dt > manifold.params.theiler) || (dt < -manifold.params.theiler);
}

namespace detail {

// Keeps the k nearest candidates seen so far. Candidates must be offered
// in ascending index order so that equal distances resolve to the lower
// index.
class TopK {
  public:
    explicit TopK(int k) : k_(static_cast<std::size_t>(k)) { entries_.reserve(k_); }

    void offer(int index, double dist) {
        if (entries_.size() < k_) {
            insert(index, dist);
        } else if (dist < entries_.back().distance) {
            entries_.pop_back();
            insert(index, dist);
        }
    }

    const std::vector<Neighbor>& entries() const { return entries_; }
    bool full() const { return entries_.size() == k_; }

  private:
    void insert(int index, double dist) {
        std::size_t pos = entries_.size();
        entries_.push_back({index, dist});
        while (pos > 0 && entries_[pos - 1].distance > dist) {
            std::swap(entries_[pos - 1], entries_[pos]);
            --pos;
        }
    }

    std::size_t k_;
    std::vector<Neighbor> entries_;
};

}  // namespace detail

// k nearest admissible points over the whole manifold.
inline std::vector<Neighbor> neighbor_query(const ShadowManifold& manifold, int query_index,
                                            int k) {
    if (query_index < 0 || query_index >= manifold.size())
        throw std::invalid_argument("neighbor_query: query_index out of range");
    if (k < 1) throw std::invalid_argument("neighbor_query: k must be >= 1");

    detail::TopK top(k);
    int admissible = 0;
    for (int c = 0; c < manifold.size(); ++c) {
        if (!admissible_neighbor(manifold, query_index, c)) continue;
        ++admissible;
        top.offer(c, point_distance(manifold, query_index, c));
    }
    if (admissible < k)
        throw std::invalid_argument("neighbor_query: only " + std::to_string(admissible) +
                                    " admissible points for k=" + std::to_string(k));
    return top.entries();
}

// k nearest admissible points among `candidates` (sorted ascending). Returns
// fewer than k entries when not enough candidates are admissible.
inline std::vector<Neighbor> neighbor_query_restricted(const ShadowManifold& manifold,
                                                       int query_index,
                                                       const std::vector<int>& candidates,
                                                       int k) {
    detail::TopK top(k);
    for (const int c : candidates) {
        if (!admissible_neighbor(manifold, query_index, c)) continue;
        top.offer(c, point_distance(manifold, query_index, c));
    }
    return top.entries();
}

}  // namespace ccmarl
