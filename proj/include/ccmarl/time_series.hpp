#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccmarl {

// A finite scalar sequence with uniform sampling. Construction validates
// that the series is non-empty and every value is finite.
struct TimeSeries {
    std::vector<double> values;

    TimeSeries() = default;

    explicit TimeSeries(std::vector<double> v) : values(std::move(v)) {
        if (values.empty())
            throw std::invalid_argument("TimeSeries: series must contain at least one value");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i]))
                throw std::invalid_argument("TimeSeries: non-finite value at index " +
                                            std::to_string(i));
        }
    }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

struct PearsonResult {
    double r = 0.0;
    bool degenerate = false;
};

// Pearson correlation of two equal-length sequences. Zero variance in
// either input yields r = 0 with the degenerate flag set.
inline PearsonResult pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("pearson: length mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    if (a.size() < 2)
        throw std::invalid_argument("pearson: need at least 2 samples");

    const std::size_t n = a.size();
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return {0.0, true};
    return {cov / std::sqrt(var_a * var_b), false};
}

inline PearsonResult pearson(const TimeSeries& a, const TimeSeries& b) {
    return pearson(a.values, b.values);
}

inline bool is_constant(const std::vector<double>& v) {
    for (const double x : v)
        if (x != v.front()) return false;
    return true;
}

}  // namespace ccmarl
