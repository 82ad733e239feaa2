#pragma once

// Delay-coordinate embedding. A scalar series x(t) is mapped to the point
// cloud of vectors (x(t), x(t-tau), ..., x(t-(E-1)tau)), the shadow
// manifold that reconstructs the underlying attractor.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/time_series.hpp"

namespace ccmarl {

struct EmbeddingParams {
    int E = 3;        // embedding dimension
    int tau = 1;      // lag, in steps
    int theiler = 2;  // temporal exclusion half-width, in steps

    static int default_theiler(int E, int tau) { return (E - 1) * tau; }

    void validate() const {
        if (E < 1) throw std::invalid_argument("EmbeddingParams: E must be >= 1");
        if (tau < 1) throw std::invalid_argument("EmbeddingParams: tau must be >= 1");
        if (theiler < 0) throw std::invalid_argument("EmbeddingParams: theiler must be >= 0");
    }

    // Smallest series length that leaves room for E+1 neighbors plus a query.
    int min_series_length() const { return (E - 1) * tau + E + 2; }

    bool operator==(const EmbeddingParams&) const = default;
};

// Embedded point cloud. Point i lives at coords[i*E .. i*E+E), most recent
// coordinate first; time_index[i] is the time of that coordinate.
struct ShadowManifold {
    std::vector<double> coords;   // row-major, size() * params.E entries
    std::vector<int> time_index;  // strictly increasing
    EmbeddingParams params;

    int size() const { return static_cast<int>(time_index.size()); }
    const double* point(int i) const {
        return coords.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(params.E);
    }
    // Length of the series the manifold was built from.
    int series_length() const { return time_index.back() + 1; }
};

inline ShadowManifold delay_embed(const TimeSeries& series, const EmbeddingParams& params) {
    params.validate();
    const int n = static_cast<int>(series.size());
    if (n < params.min_series_length())
        throw std::invalid_argument(
            "delay_embed: series too short: n=" + std::to_string(n) + ", need at least n=" +
            std::to_string(params.min_series_length()) + " for E=" + std::to_string(params.E) +
            ", tau=" + std::to_string(params.tau));

    const int span = (params.E - 1) * params.tau;
    const int m = n - span;
    ShadowManifold manifold;
    manifold.params = params;
    manifold.coords.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(params.E));
    manifold.time_index.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int t = span + i;
        manifold.time_index[static_cast<std::size_t>(i)] = t;
        for (int d = 0; d < params.E; ++d)
            manifold.coords[static_cast<std::size_t>(i) * static_cast<std::size_t>(params.E) +
                            static_cast<std::size_t>(d)] =
                series[static_cast<std::size_t>(t - d * params.tau)];
    }
    return manifold;
}

}  // namespace ccmarl
