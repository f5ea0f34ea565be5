#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsequiv/changepoint.hpp"
#include "tsequiv/clustering.hpp"
#include "tsequiv/stepfn.hpp"

namespace tsequiv {

struct PipelineConfig {
    DetectionParams detection;
    PNorm p{1.0};
    Linkage linkage = Linkage::Average;
    std::optional<std::size_t> k; // nullopt = eigengap choice
    std::optional<std::filesystem::path> series;
    std::optional<std::filesystem::path> metadata;
    std::filesystem::path out = "out";
    // Set once any detection key is given; compare_metrics otherwise uses the
    // suite's committed detection settings.
    bool detection_explicit = false;

    // Applies one `key = value` setting. Keys mirror the CLI flags without the
    // leading dashes: attribute, p, significance, min-segment, permutations,
    // linkage, k, seed, series, metadata, out. Throws InvalidArgument.
    void set(const std::string &key, const std::string &value);
};

// Flat `key = value` lines; blank lines and `#` comments are skipped.
PipelineConfig load_config(std::istream &in, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path &path, PipelineConfig base = {});

struct MatrixReport {
    std::string name;
    std::size_t spectral_k = 0;
    std::optional<double> norm; // consistency matrices only
};

struct AnalysisSummary {
    std::vector<std::string> labels;
    std::map<std::string, double> magnitudes;
    std::vector<MatrixReport> matrices;
};

/// Embeds every series, writes D_us, D_norm, Omega, A_us, A_norm and, with
/// station metadata, G, A_G, Con_us, Con_norm, Con_Omega. Each matrix gets
/// `<name>.csv`, `<name>.nwk`, `<name>.hierarchical.csv` and
/// `<name>.spectral.csv`; `summary.json` and `embeddings.json` close the run.
AnalysisSummary run_analysis(const PipelineConfig &config);

/// Writes d_H, d_MH, d_MJ (p = 1) and d_p matrices with dendrograms for the
/// configured series, or for the committed synthetic suite when no series
/// file is given.
void compare_metrics(const PipelineConfig &config);

// Writes the synthetic suite: one CSV per series plus manifest.json.
void export_figure2_suite(const std::filesystem::path &out, std::uint64_t seed);

} // namespace tsequiv
