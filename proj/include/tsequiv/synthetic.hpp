#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tsequiv/changepoint.hpp"
#include "tsequiv/timeseries.hpp"

namespace tsequiv {

// Piecewise-stationary Gaussian regimes. Segment i covers indices
// [boundaries[i], boundaries[i+1]); boundaries start at 0 and end at the
// series length.
struct RegimeSpec {
    std::string id;
    std::vector<std::size_t> boundaries;
    std::vector<double> means;
    std::vector<double> sigmas;
    std::uint64_t seed = 0;

    std::size_t length() const { return boundaries.empty() ? 0 : boundaries.back(); }
    // Interior boundaries, i.e. the designed change points.
    std::vector<std::size_t> change_points() const;
    void validate() const;
};

// Per-segment iid N(mean, sigma^2) draws from Rng(seed).
TimeSeries generate_series(const RegimeSpec &spec);

// Constructed ten-series suite. Break structure groups the series as
// {1,2,3}, {4,5}, {6,7}, {8,9,10}; only {1,3} and {7,8} also share levels.
// Series are 1-indexed in ids ("S1".."S10") and 0-indexed in the vector.
inline constexpr std::uint64_t kFigure2Seed = 20200601;
inline constexpr std::size_t kFigure2Length = 1000;
std::vector<RegimeSpec> figure2_specs(std::uint64_t seed = kFigure2Seed);
std::vector<TimeSeries> figure2_suite(std::uint64_t seed = kFigure2Seed);

// Detection settings committed for the suite; see README.
DetectionParams figure2_detection_params();

struct PerturbationSpec {
    std::size_t t0 = 0;
    std::size_t delta = 1;
    double epsilon = 0.0;
};

// Adds epsilon to indices in [t0, t0 + delta). Throws WindowOutOfRange.
TimeSeries perturb(const TimeSeries &series, const PerturbationSpec &spec);

// Manifest describing the suite, as JSON text.
std::string suite_manifest_json(const std::vector<RegimeSpec> &specs, std::uint64_t seed,
                                const DetectionParams &params);

} // namespace tsequiv
