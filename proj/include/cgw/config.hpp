#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "cgw/limits.hpp"
#include "cgw/quadrature.hpp"

namespace cgw {

struct Thresholds {
    double zero_rel = 1e-6;         // |coef| below zero_rel * scale counts as zero
    double indeterminate_band = 10; // ... and above band * zero_rel * scale as nonzero
    double singular_det_rel = 1e-8;
    double log_zero_rel = 1e-4;     // log coefficient against max(|A0|, |B0|, |C0|)
};

struct RunConfig {
    QuadConfig quad;
    LadderConfig ladder;
    Thresholds thresholds;
    std::string format = "json";  // json | csv
    std::uint64_t seed = 20240601;

    // Throws std::invalid_argument for non-positive tolerances or unknown formats.
    void validate() const;
};

// Reads a JSON object (keys: quad, ladder, thresholds, format, seed); absent
// keys keep their defaults.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& cfg);

// Worker count: CGW_THREADS if set and positive, otherwise the hardware count.
int thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. Exceptions
// from any worker are rethrown on the caller (the lowest index wins).
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace cgw
