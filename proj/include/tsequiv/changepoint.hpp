#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tsequiv/timeseries.hpp"

namespace tsequiv {

enum class Attribute { Mean, Variance };

std::string_view to_string(Attribute attribute);
Attribute parse_attribute(std::string_view text);

struct DetectionParams {
    Attribute attribute = Attribute::Mean;
    double significance = 0.05;
    std::size_t min_segment = 30;
    std::size_t permutations = 199;
    std::uint64_t seed = 0;

    // Throws InvalidArgument when a field is out of range.
    void validate() const;
};

/// Offline binary segmentation.
///
/// Each segment is scanned for the split that maximizes a two-sample statistic
/// (pooled Student t for the mean, two-sided F ratio of unbiased variances for
/// the variance). The maximum is compared against the maxima of
/// `permutations` random reorderings of the same segment; the split is kept
/// when the permutation p-value (1 + #{perm >= observed}) / (permutations + 1)
/// is at most `significance`, and both halves are searched again.
///
/// Splits are integer indices in breakpoint coordinates: a change point c
/// starts a new regime at observation c. Every gap between consecutive
/// breakpoints of {0, c_1, ..., c_m, H} is at least `min_segment`. Ties in the
/// scan go to the smallest index. Each segment draws its permutations from a
/// stream keyed on (seed, segment bounds), so results do not depend on the
/// order segments are visited.
ChangePointSet detect_change_points(const TimeSeries &series, const DetectionParams &params);

/// Per-interval statistic of observations with index in [c_i, c_{i+1}); the
/// last interval also includes index H.
std::vector<double> segment_statistics(const TimeSeries &series, const ChangePointSet &change_points,
                                       Attribute attribute);

namespace detail {

// Scan result over one segment of centered values. `statistic` is 0 when the
// segment admits no split or is constant.
struct ScanResult {
    std::size_t split = 0; // offset into the segment, 0 if none
    double statistic = 0.0;
};

// Max statistic over splits s in [first_split, last_split], where the left
// sample is values[0, s) and the right sample is values[s, size).
ScanResult scan_mean(std::span<const double> values, std::size_t first_split, std::size_t last_split);
ScanResult scan_variance(std::span<const double> values, std::size_t first_split,
                         std::size_t last_split);

} // namespace detail

} // namespace tsequiv
