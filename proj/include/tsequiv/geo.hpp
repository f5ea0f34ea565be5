#pragma once

#include <span>
#include <string>

#include "tsequiv/matrices.hpp"

namespace tsequiv {

// IUGG mean Earth radius.
inline constexpr double kEarthRadiusKm = 6371.0088;

struct StationMetadata {
    std::string id;
    double lat_deg = 0.0; // [-90, 90]
    double lon_deg = 0.0; // (-180, 180]
};

// Throws InvalidCoordinate.
void validate(const StationMetadata &station);

// Great-circle distance on the sphere of radius kEarthRadiusKm.
double haversine_km(const StationMetadata &a, const StationMetadata &b);

// Pairwise haversine distances, labeled by station id. Throws DuplicateStation.
LabeledSquareMatrix geo_distance_matrix(std::span<const StationMetadata> stations);

} // namespace tsequiv
