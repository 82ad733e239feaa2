#pragma once

// Policy checkpoints: a text header naming the architecture, then one
// hexfloat per line for each parameter, then the baseline. Hexfloats
// round-trip bit-exactly.

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/policy.hpp"

namespace ccmarl {

inline constexpr const char* kCheckpointHeader = "ccmarl-policy v1 obs=16 hidden=32 action=2";

struct Checkpoint {
    PolicyParams params;
    double baseline = 0.0;
};

namespace detail {

inline std::string hex_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
    return std::string(buf, res.ptr);
}

inline double parse_hex_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    const char* begin = s.data();
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        ++begin;
    }
    const auto res = std::from_chars(begin, s.data() + s.size(), v, std::chars_format::hex);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("checkpoint: malformed value on line " + std::to_string(line));
    return negative ? -v : v;
}

}  // namespace detail

inline void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("checkpoint: cannot write '" + path + "'");
    out << kCheckpointHeader << " params=" << kPolicyParamCount << '\n';
    for (const double v : checkpoint.params.flatten()) out << detail::hex_double(v) << '\n';
    out << "baseline " << detail::hex_double(checkpoint.baseline) << '\n';
    if (!out) throw std::runtime_error("checkpoint: write failed for '" + path + "'");
}

inline Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        line != std::string(kCheckpointHeader) + " params=" + std::to_string(kPolicyParamCount))
        throw std::runtime_error("checkpoint: unrecognized header in '" + path + "'");

    std::vector<double> flat;
    flat.reserve(kPolicyParamCount);
    std::size_t line_number = 1;
    for (int i = 0; i < kPolicyParamCount; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("checkpoint: truncated file '" + path + "'");
        ++line_number;
        flat.push_back(detail::parse_hex_double(line, line_number));
    }
    if (!std::getline(in, line) || line.rfind("baseline ", 0) != 0)
        throw std::runtime_error("checkpoint: missing baseline line in '" + path + "'");
    Checkpoint checkpoint;
    checkpoint.params = PolicyParams::from_flat(flat);
    checkpoint.baseline = detail::parse_hex_double(line.substr(9), line_number + 1);
    return checkpoint;
}

}  // namespace ccmarl
