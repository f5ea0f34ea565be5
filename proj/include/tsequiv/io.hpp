#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsequiv/clustering.hpp"
#include "tsequiv/geo.hpp"
#include "tsequiv/matrices.hpp"
#include "tsequiv/timeseries.hpp"

namespace tsequiv {

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

// One CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

struct IngestResult {
    std::vector<TimeSeries> series;
    // Present when a metadata file was given; ordered like `series`.
    std::optional<std::vector<StationMetadata>> stations;
    std::vector<std::string> warnings;
};

/// Wide series CSV: header `timestamp,<id>,<id>,...`, one row per time step.
/// Empty, NA, NaN and null cells are missing. A missing cell takes the most
/// recent prior value of its column; leading missing cells take the first
/// present value.
std::vector<TimeSeries> read_series_csv(std::istream &in);
std::vector<TimeSeries> read_series_csv(const std::filesystem::path &path);
void write_series_csv(std::ostream &out, const std::vector<TimeSeries> &series);

// Header `id,lat_deg,lon_deg`.
std::vector<StationMetadata> read_metadata_csv(std::istream &in);
std::vector<StationMetadata> read_metadata_csv(const std::filesystem::path &path);

/// Pairs series with station metadata. A series without metadata is an
/// IdMismatch error; metadata without a series is reported as a warning.
IngestResult ingest(const std::filesystem::path &series_csv,
                    const std::optional<std::filesystem::path> &metadata_csv);
IngestResult match_metadata(std::vector<TimeSeries> series, const std::vector<StationMetadata> &stations);

// Header row: empty cell then the labels; then rows `label,v1,...,vn`.
void write_matrix_csv(std::ostream &out, const LabeledSquareMatrix &m);
LabeledSquareMatrix read_matrix_csv(std::istream &in, MatrixKind kind);

// Header `label,cluster`.
void write_assignment_csv(std::ostream &out, const ClusterAssignment &assignment);

} // namespace tsequiv
