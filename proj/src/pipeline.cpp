#include "tsequiv/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "tsequiv/error.hpp"
#include "tsequiv/geo.hpp"
#include "tsequiv/io.hpp"
#include "tsequiv/matrices.hpp"
#include "tsequiv/set_metrics.hpp"
#include "tsequiv/synthetic.hpp"

namespace tsequiv {

namespace {

std::size_t parse_count(const std::string &key, const std::string &value) {
    std::size_t used = 0;
    unsigned long long parsed = 0;
    try {
        if (!value.empty() && value.front() != '-') parsed = std::stoull(value, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw Error(ErrorCode::InvalidArgument, key + " expects a nonnegative integer, got '" + value + "'");
    }
    return static_cast<std::size_t>(parsed);
}

double parse_real(const std::string &key, const std::string &value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw Error(ErrorCode::InvalidArgument, key + " expects a number, got '" + value + "'");
    }
    return parsed;
}

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    auto out = open_output(path);
    out << text;
}

void write_matrix(const std::filesystem::path &dir, const std::string &name, const LabeledSquareMatrix &m) {
    auto out = open_output(dir / (name + ".csv"));
    write_matrix_csv(out, m);
}

// Re-throws module errors with the offending series label attached.
template <typename Fn>
auto for_series(const TimeSeries &series, Fn &&fn) {
    try {
        return fn();
    } catch (const Error &e) {
        throw Error(e.code(), "series '" + series.id() + "': " + e.what());
    }
}

std::vector<std::string> labels_of(const std::vector<TimeSeries> &series) {
    std::vector<std::string> labels;
    for (const auto &s : series) labels.push_back(s.id());
    return labels;
}

// Newick, hierarchical cut and spectral assignment for one matrix.
MatrixReport cluster_outputs(const std::filesystem::path &dir, const std::string &name, const LabeledSquareMatrix &m,
                             const PipelineConfig &config) {
    MatrixReport report{name, 0, std::nullopt};
    const auto n = static_cast<std::size_t>(m.size());
    const auto dendrogram = hierarchical_cluster(m, config.linkage);
    write_text(dir / (name + ".nwk"), to_newick(dendrogram) + "\n");

    const auto similarity = to_similarity(m);
    report.spectral_k = config.k ? *config.k : eigengap_k(similarity, std::min<std::size_t>(10, n - 1));
    {
        auto out = open_output(dir / (name + ".hierarchical.csv"));
        write_assignment_csv(out, cut_dendrogram(dendrogram, report.spectral_k));
    }
    {
        auto out = open_output(dir / (name + ".spectral.csv"));
        write_assignment_csv(out, spectral_cluster(similarity, report.spectral_k, config.detection.seed));
    }
    if (m.kind() == MatrixKind::Consistency) report.norm = matrix_norm(m);
    return report;
}

} // namespace

void PipelineConfig::set(const std::string &raw_key, const std::string &raw_value) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(raw_value);
    if (key == "attribute") {
        detection.attribute = parse_attribute(value);
        detection_explicit = true;
    } else if (key == "p") {
        p = PNorm::parse(value);
    } else if (key == "significance") {
        detection.significance = parse_real(key, value);
        detection_explicit = true;
    } else if (key == "min-segment") {
        detection.min_segment = parse_count(key, value);
        detection_explicit = true;
    } else if (key == "permutations") {
        detection.permutations = parse_count(key, value);
        detection_explicit = true;
    } else if (key == "seed") {
        detection.seed = parse_count(key, value);
        detection_explicit = true;
    } else if (key == "linkage") {
        linkage = parse_linkage(value);
    } else if (key == "k") {
        if (value == "auto") {
            k.reset();
        } else {
            k = parse_count(key, value);
        }
    } else if (key == "series") {
        series = value;
    } else if (key == "metadata") {
        metadata = value;
    } else if (key == "out") {
        out = value;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown configuration key '" + raw_key + "'");
    }
}

PipelineConfig load_config(std::istream &in, PipelineConfig base) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(number) + " is not `key = value`");
        }
        base.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

PipelineConfig load_config(const std::filesystem::path &path, PipelineConfig base) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path.string() + "'");
    return load_config(in, std::move(base));
}

AnalysisSummary run_analysis(const PipelineConfig &config) {
    if (!config.series) throw Error(ErrorCode::InvalidArgument, "run needs a series CSV");
    config.detection.validate();
    auto input = ingest(*config.series, config.metadata);
    for (const auto &w : input.warnings) std::cerr << "warning: " << w << '\n';
    const auto &series = input.series;
    if (series.size() < 2) throw Error(ErrorCode::InvalidArgument, "pairwise analysis needs at least 2 series");

    std::vector<StepFunction> fs;
    for (const auto &s : series) fs.push_back(for_series(s, [&] { return embed(s, config.detection); }));

    AnalysisSummary summary;
    summary.labels = labels_of(series);
    for (std::size_t i = 0; i < fs.size(); ++i) summary.magnitudes[summary.labels[i]] = lp_norm(fs[i], config.p);

    const auto &dir = config.out;
    std::filesystem::create_directories(dir);

    std::vector<std::pair<std::string, LabeledSquareMatrix>> matrices;
    const auto d_us = unscaled_distance_matrix(fs, config.p, summary.labels);
    const auto d_norm = normalized_distance_matrix(fs, config.p, summary.labels);
    const auto omega = alignment_matrix(fs, summary.labels);
    const auto a_us = to_affinity(d_us);
    const auto a_norm = to_affinity(d_norm);
    matrices.emplace_back("D_us", d_us);
    matrices.emplace_back("D_norm", d_norm);
    matrices.emplace_back("Omega", omega);
    matrices.emplace_back("A_us", a_us);
    matrices.emplace_back("A_norm", a_norm);
    if (input.stations) {
        const auto g = geo_distance_matrix(*input.stations);
        const auto a_g = to_affinity(g);
        matrices.emplace_back("G", g);
        matrices.emplace_back("A_G", a_g);
        matrices.emplace_back("Con_us", consistency_matrix(a_us, a_g));
        matrices.emplace_back("Con_norm", consistency_matrix(a_norm, a_g));
        matrices.emplace_back("Con_Omega", consistency_matrix(omega, a_g));
    }

    for (const auto &[name, m] : matrices) {
        write_matrix(dir, name, m);
        summary.matrices.push_back(cluster_outputs(dir, name, m, config));
    }

    nlohmann::json embeddings = nlohmann::json::object();
    for (std::size_t i = 0; i < fs.size(); ++i) embeddings[summary.labels[i]] = nlohmann::json::parse(to_json(fs[i]));
    write_text(dir / "embeddings.json", embeddings.dump(2) + "\n");

    nlohmann::json j;
    j["n"] = series.size();
    j["horizon"] = series.front().horizon();
    j["attribute"] = std::string(to_string(config.detection.attribute));
    j["p"] = config.p.to_string();
    j["linkage"] = std::string(to_string(config.linkage));
    j["labels"] = summary.labels;
    j["magnitudes"] = summary.magnitudes;
    j["matrices"] = nlohmann::json::object();
    j["consistency_norms"] = nlohmann::json::object();
    for (const auto &r : summary.matrices) {
        j["matrices"][r.name] = {{"k", r.spectral_k}};
        if (r.norm) {
            j["matrices"][r.name]["norm"] = *r.norm;
            j["consistency_norms"][r.name] = *r.norm;
        }
    }
    write_text(dir / "summary.json", j.dump(2) + "\n");
    return summary;
}

void compare_metrics(const PipelineConfig &config) {
    std::vector<TimeSeries> series;
    DetectionParams detection = config.detection;
    if (config.series) {
        series = read_series_csv(*config.series);
    } else {
        series = figure2_suite();
        if (!config.detection_explicit) detection = figure2_detection_params();
    }
    if (series.size() < 2) throw Error(ErrorCode::InvalidArgument, "pairwise analysis needs at least 2 series");
    detection.validate();

    std::vector<ChangePointSet> cps;
    std::vector<StepFunction> fs;
    for (const auto &s : series) {
        cps.push_back(for_series(s, [&] { return detect_change_points(s, detection); }));
        fs.push_back(for_series(s, [&] { return step_function(s, cps.back(), detection.attribute); }));
        if (cps.back().empty()) {
            throw Error(ErrorCode::EmptySet, "series '" + s.id() + "' has no change points; set distances are undefined");
        }
    }
    const auto labels = labels_of(series);
    const auto n = static_cast<Eigen::Index>(series.size());

    auto set_matrix = [&](auto &&metric) {
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                d(i, j) = d(j, i) = metric(cps[static_cast<std::size_t>(i)].points(), cps[static_cast<std::size_t>(j)].points());
            }
        }
        return LabeledSquareMatrix(labels, std::move(d), MatrixKind::Distance);
    };

    std::vector<std::pair<std::string, LabeledSquareMatrix>> matrices;
    matrices.emplace_back("d_H", set_matrix([](auto s, auto t) { return hausdorff(s, t); }));
    matrices.emplace_back("d_MH", set_matrix([](auto s, auto t) { return modified_hausdorff(s, t); }));
    matrices.emplace_back("d_MJ", set_matrix([](auto s, auto t) { return mj_semi_metric(s, t, 1.0); }));
    matrices.emplace_back("d_p", unscaled_distance_matrix(fs, config.p, labels));

    const auto &dir = config.out;
    std::filesystem::create_directories(dir);
    for (const auto &[name, m] : matrices) {
        write_matrix(dir, name, m);
        write_text(dir / (name + ".nwk"), to_newick(hierarchical_cluster(m, config.linkage)) + "\n");
    }

    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < series.size(); ++i) {
        j[labels[i]] = {{"change_points", std::vector<std::size_t>(cps[i].points().begin(), cps[i].points().end())},
                        {"embedding", nlohmann::json::parse(to_json(fs[i]))}};
    }
    write_text(dir / "change_points.json", j.dump(2) + "\n");
}

void export_figure2_suite(const std::filesystem::path &out, std::uint64_t seed) {
    std::filesystem::create_directories(out);
    const auto specs = figure2_specs(seed);
    std::vector<TimeSeries> all;
    for (const auto &spec : specs) {
        all.push_back(generate_series(spec));
        auto file = open_output(out / (spec.id + ".csv"));
        write_series_csv(file, {all.back()});
    }
    {
        auto file = open_output(out / "suite.csv");
        write_series_csv(file, all);
    }
    write_text(out / "manifest.json", suite_manifest_json(specs, seed, figure2_detection_params()) + "\n");
}

} // namespace tsequiv
