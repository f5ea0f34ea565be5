#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsequiv {

// Observations X_0..X_H at unit-spaced integer times.
class TimeSeries {
public:
    TimeSeries(std::string id, std::vector<double> values);

    const std::string &id() const noexcept { return id_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    // Time horizon H = size() - 1.
    std::size_t horizon() const noexcept { return values_.size() - 1; }

private:
    std::string id_;
    std::vector<double> values_;
};

// Interior change points 0 < c_1 < ... < c_m < H.
class ChangePointSet {
public:
    ChangePointSet() = default;
    ChangePointSet(std::vector<std::size_t> points, std::size_t horizon);

    std::span<const std::size_t> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    friend bool operator==(const ChangePointSet &, const ChangePointSet &) = default;

private:
    std::vector<std::size_t> points_;
};

} // namespace tsequiv
