#include "tsequiv/set_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tsequiv/error.hpp"

namespace tsequiv {

namespace {

void require_nonempty(std::span<const std::size_t> s, std::span<const std::size_t> t) {
    if (s.empty() || t.empty()) {
        throw Error(ErrorCode::EmptySet, "set distances are undefined for empty change-point sets");
    }
}

// d(x, T) for every x in S.
std::vector<double> point_to_set(std::span<const std::size_t> s, std::span<const std::size_t> t) {
    std::vector<std::size_t> sorted(t.begin(), t.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(s.size());
    for (auto x : s) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
        std::size_t best = std::numeric_limits<std::size_t>::max();
        if (it != sorted.end()) best = *it - x;
        if (it != sorted.begin()) best = std::min(best, x - *(it - 1));
        out.push_back(static_cast<double>(best));
    }
    return out;
}

double mean(const std::vector<double> &v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

} // namespace

double hausdorff(std::span<const std::size_t> s, std::span<const std::size_t> t) {
    require_nonempty(s, t);
    const auto st = point_to_set(s, t);
    const auto ts = point_to_set(t, s);
    return std::max(*std::max_element(st.begin(), st.end()), *std::max_element(ts.begin(), ts.end()));
}

double modified_hausdorff(std::span<const std::size_t> s, std::span<const std::size_t> t) {
    require_nonempty(s, t);
    return std::max(mean(point_to_set(s, t)), mean(point_to_set(t, s)));
}

double mj_semi_metric(std::span<const std::size_t> s, std::span<const std::size_t> t, double p) {
    require_nonempty(s, t);
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::InvalidArgument, "the MJ semi-metric needs a finite p >= 1");
    }
    auto directed = [p](const std::vector<double> &d) {
        double acc = 0.0;
        for (double x : d) acc += std::pow(x, p);
        return acc / (2.0 * static_cast<double>(d.size()));
    };
    return std::pow(directed(point_to_set(t, s)) + directed(point_to_set(s, t)), 1.0 / p);
}

} // namespace tsequiv
