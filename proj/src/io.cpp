#include "tsequiv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include "tsequiv/error.hpp"

namespace tsequiv {

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

bool is_missing(const std::string &cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "null" || cell == "NULL";
}

// Strict decimal parse of the whole cell.
std::optional<double> parse_number(const std::string &cell) {
    double value = 0.0;
    const char *begin = cell.data();
    const char *end = cell.data() + cell.size();
    if (begin != end && *begin == '+') ++begin;
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::ifstream open_input(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    return in;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::vector<TimeSeries> read_series_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::UnparseableCell, "series CSV is empty");
    auto header = split_csv_line(line);
    if (header.size() < 2) throw Error(ErrorCode::UnparseableCell, "series CSV needs a timestamp column and at least one series");
    std::vector<std::string> ids;
    for (std::size_t c = 1; c < header.size(); ++c) ids.push_back(trim(header[c]));
    if (std::set<std::string>(ids.begin(), ids.end()).size() != ids.size()) {
        throw Error(ErrorCode::UnparseableCell, "series CSV has duplicate column ids");
    }

    std::vector<std::vector<std::optional<double>>> columns(ids.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::UnparseableCell, "row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                                        " cells, expected " + std::to_string(header.size()));
        }
        for (std::size_t c = 0; c < ids.size(); ++c) {
            const auto cell = trim(cells[c + 1]);
            if (is_missing(cell)) {
                columns[c].emplace_back();
                continue;
            }
            const auto value = parse_number(cell);
            if (!value) {
                throw Error(ErrorCode::UnparseableCell,
                            "row " + std::to_string(row) + ", column '" + ids[c] + "': cannot parse '" + cell + "'");
            }
            columns[c].push_back(value);
        }
    }

    std::vector<TimeSeries> out;
    out.reserve(ids.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
        const auto &col = columns[c];
        std::optional<double> last;
        for (const auto &v : col) {
            if (v) {
                last = v;
                break;
            }
        }
        if (!last) throw Error(ErrorCode::AllMissingColumn, "column '" + ids[c] + "' has no observations");
        // Leading gaps take the first observation; later gaps repeat the previous one.
        std::vector<double> values;
        values.reserve(col.size());
        for (const auto &v : col) {
            if (v) last = v;
            values.push_back(*last);
        }
        out.emplace_back(ids[c], std::move(values));
    }
    return out;
}

std::vector<TimeSeries> read_series_csv(const std::filesystem::path &path) {
    auto in = open_input(path);
    return read_series_csv(in);
}

void write_series_csv(std::ostream &out, const std::vector<TimeSeries> &series) {
    out << "t";
    for (const auto &s : series) out << ',' << csv_field(s.id());
    out << '\n';
    const std::size_t rows = series.empty() ? 0 : series.front().size();
    for (std::size_t t = 0; t < rows; ++t) {
        out << t;
        for (const auto &s : series) out << ',' << format_double(s.values()[t]);
        out << '\n';
    }
}

std::vector<StationMetadata> read_metadata_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::UnparseableCell, "metadata CSV is empty");
    const auto header = split_csv_line(line);
    std::map<std::string, std::size_t> column;
    for (std::size_t c = 0; c < header.size(); ++c) column[trim(header[c])] = c;
    for (const char *name : {"id", "lat_deg", "lon_deg"}) {
        if (!column.count(name)) {
            throw Error(ErrorCode::UnparseableCell, std::string("metadata CSV lacks column '") + name + "'");
        }
    }

    std::vector<StationMetadata> out;
    std::set<std::string> seen;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::UnparseableCell, "metadata row " + std::to_string(row) + " has the wrong number of cells");
        }
        StationMetadata s;
        s.id = trim(cells[column["id"]]);
        const auto lat = parse_number(trim(cells[column["lat_deg"]]));
        const auto lon = parse_number(trim(cells[column["lon_deg"]]));
        if (!lat || !lon) {
            throw Error(ErrorCode::UnparseableCell, "metadata row " + std::to_string(row) + " has an unparseable coordinate");
        }
        s.lat_deg = *lat;
        s.lon_deg = *lon;
        validate(s);
        if (!seen.insert(s.id).second) throw Error(ErrorCode::DuplicateStation, "station id '" + s.id + "' repeats");
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<StationMetadata> read_metadata_csv(const std::filesystem::path &path) {
    auto in = open_input(path);
    return read_metadata_csv(in);
}

IngestResult match_metadata(std::vector<TimeSeries> series, const std::vector<StationMetadata> &stations) {
    IngestResult result;
    std::map<std::string, const StationMetadata *> by_id;
    for (const auto &s : stations) by_id[s.id] = &s;

    std::vector<StationMetadata> ordered;
    std::set<std::string> used;
    for (const auto &ts : series) {
        const auto it = by_id.find(ts.id());
        if (it == by_id.end()) throw Error(ErrorCode::IdMismatch, "series '" + ts.id() + "' has no station metadata");
        ordered.push_back(*it->second);
        used.insert(ts.id());
    }
    for (const auto &s : stations) {
        if (!used.count(s.id)) result.warnings.push_back("station '" + s.id + "' has metadata but no series; ignored");
    }
    result.series = std::move(series);
    result.stations = std::move(ordered);
    return result;
}

IngestResult ingest(const std::filesystem::path &series_csv, const std::optional<std::filesystem::path> &metadata_csv) {
    auto series = read_series_csv(series_csv);
    if (!metadata_csv) {
        IngestResult result;
        result.series = std::move(series);
        return result;
    }
    return match_metadata(std::move(series), read_metadata_csv(*metadata_csv));
}

void write_matrix_csv(std::ostream &out, const LabeledSquareMatrix &m) {
    for (const auto &label : m.labels()) out << ',' << csv_field(label);
    out << '\n';
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        out << csv_field(m.labels()[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < m.size(); ++j) out << ',' << format_double(m(i, j));
        out << '\n';
    }
}

LabeledSquareMatrix read_matrix_csv(std::istream &in, MatrixKind kind) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::UnparseableCell, "matrix CSV is empty");
    const auto header = split_csv_line(line);
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd entries(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw Error(ErrorCode::UnparseableCell, "matrix CSV is missing rows");
        const auto cells = split_csv_line(line);
        if (static_cast<Eigen::Index>(cells.size()) != n + 1 || cells[0] != labels[static_cast<std::size_t>(i)]) {
            throw Error(ErrorCode::UnparseableCell, "matrix row " + std::to_string(i + 1) + " is malformed");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto v = parse_number(cells[static_cast<std::size_t>(j + 1)]);
            if (!v) throw Error(ErrorCode::UnparseableCell, "matrix cell '" + cells[static_cast<std::size_t>(j + 1)] + "'");
            entries(i, j) = *v;
        }
    }
    return {std::move(labels), std::move(entries), kind};
}

void write_assignment_csv(std::ostream &out, const ClusterAssignment &assignment) {
    out << "label,cluster\n";
    for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
        out << csv_field(assignment.labels[i]) << ',' << assignment.cluster[i] << '\n';
    }
}

} // namespace tsequiv
