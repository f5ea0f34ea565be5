#include "tsequiv/synthetic.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "tsequiv/error.hpp"
#include "tsequiv/random.hpp"

namespace tsequiv {

std::vector<std::size_t> RegimeSpec::change_points() const {
    if (boundaries.size() < 2) return {};
    return {boundaries.begin() + 1, boundaries.end() - 1};
}

void RegimeSpec::validate() const {
    if (boundaries.size() < 2 || boundaries.front() != 0) {
        throw Error(ErrorCode::InvalidArgument, "regime boundaries must start at 0 and list at least one segment");
    }
    for (std::size_t i = 1; i < boundaries.size(); ++i) {
        if (boundaries[i] <= boundaries[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "regime boundaries must be strictly increasing");
        }
    }
    const std::size_t segments = boundaries.size() - 1;
    if (means.size() != segments || sigmas.size() != segments) {
        throw Error(ErrorCode::InvalidArgument, "regime '" + id + "' needs one mean and one sigma per segment");
    }
    for (std::size_t i = 0; i < segments; ++i) {
        if (!std::isfinite(means[i]) || !(sigmas[i] >= 0.0) || !std::isfinite(sigmas[i])) {
            throw Error(ErrorCode::InvalidArgument, "regime '" + id + "' has an invalid mean or sigma");
        }
    }
}

TimeSeries generate_series(const RegimeSpec &spec) {
    spec.validate();
    Rng rng(spec.seed);
    std::vector<double> values;
    values.reserve(spec.length());
    for (std::size_t s = 0; s + 1 < spec.boundaries.size(); ++s) {
        for (std::size_t t = spec.boundaries[s]; t < spec.boundaries[s + 1]; ++t) {
            // sigma = 0 must give the mean exactly, without consuming a draw.
            values.push_back(spec.sigmas[s] == 0.0 ? spec.means[s] : spec.means[s] + spec.sigmas[s] * rng.normal());
        }
    }
    return TimeSeries(spec.id, std::move(values));
}

std::vector<RegimeSpec> figure2_specs(std::uint64_t seed) {
    constexpr std::size_t L = kFigure2Length;
    struct Row {
        std::vector<std::size_t> boundaries;
        std::vector<double> means;
    };
    // Break groups: {1,2,3} at 333/666, {4,5} at 250/500/750, {6,7} at
    // 200/600, {8,9,10} at 200/620. Levels repeat only for 1 and 3, and for 7
    // and 8 (whose second breaks are 20 apart).
    const std::vector<Row> rows = {
        {{0, 333, 666, L}, {0.0, 6.0, 0.0}},
        {{0, 333, 666, L}, {0.0, 6.0, 12.0}},
        {{0, 333, 666, L}, {0.0, 6.0, 0.0}},
        {{0, 250, 500, 750, L}, {6.0, 0.0, 6.0, 0.0}},
        {{0, 250, 500, 750, L}, {0.0, 6.0, 12.0, 6.0}},
        {{0, 200, 600, L}, {12.0, 6.0, 12.0}},
        {{0, 200, 600, L}, {0.0, 6.0, 0.0}},
        {{0, 200, 620, L}, {0.0, 6.0, 0.0}},
        {{0, 200, 620, L}, {6.0, 12.0, 6.0}},
        {{0, 200, 620, L}, {12.0, 0.0, 12.0}},
    };
    std::vector<RegimeSpec> specs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        RegimeSpec spec;
        spec.id = "S" + std::to_string(i + 1);
        spec.boundaries = rows[i].boundaries;
        spec.means = rows[i].means;
        spec.sigmas.assign(spec.means.size(), 1.0);
        spec.seed = mix_seed(seed, i + 1);
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<TimeSeries> figure2_suite(std::uint64_t seed) {
    std::vector<TimeSeries> out;
    for (const auto &spec : figure2_specs(seed)) out.push_back(generate_series(spec));
    return out;
}

DetectionParams figure2_detection_params() {
    // About forty segment tests run across the suite, so a per-test level of
    // 0.001 keeps the expected number of spurious breaks well below one.
    DetectionParams params;
    params.significance = 0.001;
    params.permutations = 1999;
    return params;
}

TimeSeries perturb(const TimeSeries &series, const PerturbationSpec &spec) {
    const std::size_t horizon = series.horizon();
    if (spec.delta == 0 || spec.t0 >= horizon || spec.t0 + spec.delta > horizon || !std::isfinite(spec.epsilon)) {
        throw Error(ErrorCode::WindowOutOfRange, "window [" + std::to_string(spec.t0) + ", " +
                                                     std::to_string(spec.t0 + spec.delta) + ") does not fit in [0, " +
                                                     std::to_string(horizon) + "]");
    }
    std::vector<double> values(series.values().begin(), series.values().end());
    // A window ending at H also covers observation H, which belongs to the
    // final interval of the embedding.
    const std::size_t end = spec.t0 + spec.delta == horizon ? horizon + 1 : spec.t0 + spec.delta;
    for (std::size_t t = spec.t0; t < end; ++t) values[t] += spec.epsilon;
    return TimeSeries(series.id(), std::move(values));
}

std::string suite_manifest_json(const std::vector<RegimeSpec> &specs, std::uint64_t seed,
                                const DetectionParams &params) {
    nlohmann::json j;
    j["seed"] = seed;
    j["generator"] = "mt19937_64 seeded through splitmix64; Marsaglia polar normals";
    j["detection"] = {{"attribute", std::string(to_string(params.attribute))},
                      {"significance", params.significance},
                      {"min_segment", params.min_segment},
                      {"permutations", params.permutations},
                      {"seed", params.seed}};
    j["series"] = nlohmann::json::array();
    for (const auto &spec : specs) {
        j["series"].push_back({{"id", spec.id},
                               {"boundaries", spec.boundaries},
                               {"means", spec.means},
                               {"sigmas", spec.sigmas},
                               {"seed", spec.seed},
                               {"file", spec.id + ".csv"}});
    }
    return j.dump(2);
}

} // namespace tsequiv
