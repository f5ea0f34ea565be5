#include "tsequiv/timeseries.hpp"

#include <cmath>

#include "tsequiv/error.hpp"

namespace tsequiv {

TimeSeries::TimeSeries(std::string id, std::vector<double> values)
    : id_(std::move(id)), values_(std::move(values)) {
    if (values_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "series '" + id_ + "' needs at least 2 observations");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorCode::InvalidArgument,
                        "series '" + id_ + "' has a non-finite value at index " + std::to_string(i));
        }
    }
}

ChangePointSet::ChangePointSet(std::vector<std::size_t> points, std::size_t horizon)
    : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto c = points_[i];
        if (c == 0 || c >= horizon) {
            throw Error(ErrorCode::InvalidArgument,
                        "change point " + std::to_string(c) + " is not interior to (0, " +
                            std::to_string(horizon) + ")");
        }
        if (i > 0 && c <= points_[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "change points must be strictly increasing");
        }
    }
}

} // namespace tsequiv
