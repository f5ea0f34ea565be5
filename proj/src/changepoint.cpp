#include "tsequiv/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "tsequiv/error.hpp"
#include "tsequiv/random.hpp"

namespace tsequiv {

std::string_view to_string(Attribute attribute) {
    return attribute == Attribute::Mean ? "mean" : "variance";
}

Attribute parse_attribute(std::string_view text) {
    if (text == "mean") return Attribute::Mean;
    if (text == "variance") return Attribute::Variance;
    throw Error(ErrorCode::InvalidArgument, "unknown attribute '" + std::string(text) + "'");
}

void DetectionParams::validate() const {
    if (!(significance > 0.0 && significance < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "significance must lie in (0, 1)");
    }
    const std::size_t floor = attribute == Attribute::Mean ? 2 : 3;
    if (min_segment < floor) {
        throw Error(ErrorCode::InvalidArgument,
                    "min_segment must be at least " + std::to_string(floor) + " for the " +
                        std::string(to_string(attribute)) + " attribute");
    }
    if (permutations == 0) {
        throw Error(ErrorCode::InvalidArgument, "permutations must be positive");
    }
}

namespace detail {

ScanResult scan_mean(std::span<const double> values, std::size_t first_split, std::size_t last_split) {
    const std::size_t n = values.size();
    if (n < 3 || first_split < 1 || last_split >= n || first_split > last_split) return {};

    double sum = 0.0, sum_sq = 0.0;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
    }
    const double nd = static_cast<double>(n);
    const double total_ss = sum_sq - sum * sum / nd;
    if (!(total_ss > 0.0)) return {};

    // t^2 = (n - 2) B / (T - B) is increasing in the between-group sum of
    // squares B, so the scan maximizes B and converts once at the end.
    double left = 0.0;
    for (std::size_t i = 0; i < first_split; ++i) left += values[i];

    ScanResult best;
    double best_between = -1.0;
    for (std::size_t s = first_split; s <= last_split; ++s) {
        if (s > first_split) left += values[s - 1];
        const double nl = static_cast<double>(s);
        const double nr = nd - nl;
        const double diff = (sum - left) / nr - left / nl;
        const double between = nl * nr / nd * diff * diff;
        if (between > best_between) {
            best_between = between;
            best.split = s;
        }
    }
    const double within = total_ss - best_between;
    best.statistic = within > 0.0 ? std::sqrt((nd - 2.0) * best_between / within)
                                  : std::numeric_limits<double>::infinity();
    return best;
}

ScanResult scan_variance(std::span<const double> values, std::size_t first_split, std::size_t last_split) {
    const std::size_t n = values.size();
    if (n < 4 || first_split < 2 || last_split + 2 > n || first_split > last_split) return {};

    double sum = 0.0, sum_sq = 0.0;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
    }
    double left = 0.0, left_sq = 0.0;
    for (std::size_t i = 0; i < first_split; ++i) {
        left += values[i];
        left_sq += values[i] * values[i];
    }

    const double nd = static_cast<double>(n);
    ScanResult best;
    for (std::size_t s = first_split; s <= last_split; ++s) {
        if (s > first_split) {
            left += values[s - 1];
            left_sq += values[s - 1] * values[s - 1];
        }
        const double nl = static_cast<double>(s);
        const double nr = nd - nl;
        const double right = sum - left;
        const double var_l = std::max(0.0, left_sq - left * left / nl) / (nl - 1.0);
        const double var_r = std::max(0.0, (sum_sq - left_sq) - right * right / nr) / (nr - 1.0);
        double ratio;
        if (var_l == 0.0 && var_r == 0.0) {
            ratio = 0.0;
        } else if (var_l == 0.0 || var_r == 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        } else {
            ratio = std::max(var_l / var_r, var_r / var_l);
        }
        if (ratio > best.statistic) {
            best.statistic = ratio;
            best.split = s;
        }
    }
    return best;
}

} // namespace detail

namespace {

struct Segment {
    std::size_t begin; // first observation
    std::size_t end;   // one past the last observation
};

detail::ScanResult scan(Attribute attribute, std::span<const double> values, std::size_t first,
                        std::size_t last) {
    return attribute == Attribute::Mean ? detail::scan_mean(values, first, last)
                                        : detail::scan_variance(values, first, last);
}

} // namespace

ChangePointSet detect_change_points(const TimeSeries &series, const DetectionParams &params) {
    params.validate();
    const std::size_t n = series.size();
    const std::size_t m = params.min_segment;
    if (n < 2 * m) {
        throw Error(ErrorCode::SeriesTooShort, "series '" + series.id() + "' has " + std::to_string(n) +
                                                   " observations; at least " + std::to_string(2 * m) +
                                                   " are needed for min_segment " + std::to_string(m));
    }
    const std::size_t horizon = n - 1;
    const auto x = series.values();

    std::vector<std::size_t> found;
    std::vector<Segment> pending{{0, n}};
    std::vector<double> centered;
    std::vector<double> shuffled;

    while (!pending.empty()) {
        const Segment seg = pending.back();
        pending.pop_back();

        // The last segment ends at breakpoint H although it holds H + 1 - begin points.
        const std::size_t end_breakpoint = seg.end == n ? horizon : seg.end;
        const std::size_t span = end_breakpoint - seg.begin;
        if (span < 2 * m) continue;
        const std::size_t first = m;
        const std::size_t last = span - m;

        centered.assign(x.begin() + static_cast<std::ptrdiff_t>(seg.begin),
                        x.begin() + static_cast<std::ptrdiff_t>(seg.end));
        const double reference = centered.front();
        for (double &v : centered) v -= reference;

        const auto observed = scan(params.attribute, centered, first, last);
        if (!(observed.statistic > 0.0)) continue;

        Rng rng(params.seed, (static_cast<std::uint64_t>(seg.begin) << 32) ^ seg.end);
        shuffled = centered;
        const double denom = static_cast<double>(params.permutations) + 1.0;
        std::size_t exceed = 0;
        bool significant = true;
        for (std::size_t r = 0; r < params.permutations; ++r) {
            rng.shuffle(std::span<double>(shuffled));
            if (scan(params.attribute, shuffled, first, last).statistic >= observed.statistic) {
                ++exceed;
                if ((1.0 + static_cast<double>(exceed)) / denom > params.significance) {
                    significant = false;
                    break;
                }
            }
        }
        if (!significant || (1.0 + static_cast<double>(exceed)) / denom > params.significance) continue;

        const std::size_t cp = seg.begin + observed.split;
        found.push_back(cp);
        pending.push_back({cp, seg.end});
        pending.push_back({seg.begin, cp});
    }

    std::sort(found.begin(), found.end());
    return ChangePointSet(std::move(found), horizon);
}

std::vector<double> segment_statistics(const TimeSeries &series, const ChangePointSet &change_points,
                                       Attribute attribute) {
    const std::size_t n = series.size();
    const auto x = series.values();
    const auto cps = change_points.points();
    if (!cps.empty() && cps.back() >= n - 1) {
        throw Error(ErrorCode::InvalidArgument, "change points exceed the horizon of '" + series.id() + "'");
    }

    std::vector<double> stats;
    stats.reserve(cps.size() + 1);
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= cps.size(); ++i) {
        const std::size_t end = i < cps.size() ? cps[i] : n;
        const auto count = static_cast<double>(end - begin);
        // Accumulating offsets from the first value keeps constant segments exact.
        const double reference = x[begin];
        double offset = 0.0;
        for (std::size_t t = begin; t < end; ++t) offset += x[t] - reference;
        const double mean = reference + offset / count;
        if (attribute == Attribute::Mean) {
            stats.push_back(mean);
        } else {
            if (end - begin < 2) {
                throw Error(ErrorCode::DegenerateSegment, "variance segment [" + std::to_string(begin) + ", " +
                                                              std::to_string(end) + ") of '" + series.id() +
                                                              "' has fewer than 2 observations");
            }
            double ss = 0.0;
            for (std::size_t t = begin; t < end; ++t) ss += (x[t] - mean) * (x[t] - mean);
            stats.push_back(ss / (count - 1.0));
        }
        begin = end;
    }
    return stats;
}

} // namespace tsequiv
