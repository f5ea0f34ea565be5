#include "tsequiv/geo.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "tsequiv/error.hpp"
#include "tsequiv/io.hpp"

namespace tsequiv {

void validate(const StationMetadata &station) {
    const bool lat_ok = station.lat_deg >= -90.0 && station.lat_deg <= 90.0;
    const bool lon_ok = station.lon_deg > -180.0 && station.lon_deg <= 180.0;
    if (!lat_ok || !lon_ok) {
        throw Error(ErrorCode::InvalidCoordinate, "station '" + station.id + "' has coordinates (" +
                                                      format_double(station.lat_deg) + ", " +
                                                      format_double(station.lon_deg) + ")");
    }
}

double haversine_km(const StationMetadata &a, const StationMetadata &b) {
    validate(a);
    validate(b);
    constexpr double to_rad = std::numbers::pi / 180.0;
    const double phi1 = a.lat_deg * to_rad;
    const double phi2 = b.lat_deg * to_rad;
    const double dphi = (b.lat_deg - a.lat_deg) * to_rad;
    const double dlambda = (b.lon_deg - a.lon_deg) * to_rad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = std::min(1.0, s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2);
    return 2.0 * kEarthRadiusKm * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

LabeledSquareMatrix geo_distance_matrix(std::span<const StationMetadata> stations) {
    if (stations.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "a geographic distance matrix needs at least 2 stations");
    }
    std::set<std::string> seen;
    std::vector<std::string> labels;
    for (const auto &s : stations) {
        if (!seen.insert(s.id).second) throw Error(ErrorCode::DuplicateStation, "station id '" + s.id + "' repeats");
        labels.push_back(s.id);
    }
    const auto n = static_cast<Eigen::Index>(stations.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            g(i, j) = g(j, i) =
                haversine_km(stations[static_cast<std::size_t>(i)], stations[static_cast<std::size_t>(j)]);
        }
    }
    return {std::move(labels), std::move(g), MatrixKind::Distance};
}

} // namespace tsequiv
