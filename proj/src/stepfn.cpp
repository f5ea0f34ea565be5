#include "tsequiv/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "tsequiv/error.hpp"
#include "tsequiv/io.hpp"

namespace tsequiv {

PNorm::PNorm(double p) : p_(p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "p must be at least 1 (got " + format_double(p) + ")");
    }
}

PNorm PNorm::parse(const std::string &text) {
    if (text == "inf" || text == "Inf" || text == "infinity" || text == "Infinity") return infinity();
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw Error(ErrorCode::InvalidArgument, "cannot parse p from '" + text + "'");
    }
    return PNorm(p);
}

std::string PNorm::to_string() const { return is_infinite() ? "inf" : format_double(p_); }

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values) {
    if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size()) {
        throw Error(ErrorCode::InvalidArgument, "a step function needs k + 1 breakpoints for k values");
    }
    if (breakpoints.front() != 0.0) {
        throw Error(ErrorCode::InvalidArgument, "the first breakpoint must be 0");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]) || !(breakpoints[i] > breakpoints[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "breakpoints must be finite and strictly increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "step values must be finite");
    }

    breakpoints_.reserve(breakpoints.size());
    values_.reserve(values.size());
    breakpoints_.push_back(0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values_.empty() && values_.back() == values[i]) {
            breakpoints_.back() = breakpoints[i + 1];
        } else {
            values_.push_back(values[i]);
            breakpoints_.push_back(breakpoints[i + 1]);
        }
    }
}

StepFunction StepFunction::constant(double value, double horizon) { return StepFunction({0.0, horizon}, {value}); }

double StepFunction::operator()(double x) const {
    const auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, x);
    return values_[static_cast<std::size_t>(it - (breakpoints_.begin() + 1))];
}

namespace {

void require_same_domain(const StepFunction &f, const StepFunction &g) {
    if (f.horizon() != g.horizon()) {
        throw Error(ErrorCode::DomainMismatch, "horizons differ: " + format_double(f.horizon()) + " vs " +
                                                   format_double(g.horizon()));
    }
}

// Calls visit(weight, f_value, g_value) for each cell of the common refinement,
// where weight = cell length / H.
template <typename Visit>
void for_each_cell(const StepFunction &f, const StepFunction &g, Visit &&visit) {
    const auto bf = f.breakpoints();
    const auto bg = g.breakpoints();
    const auto vf = f.values();
    const auto vg = g.values();
    const double horizon = f.horizon();
    std::size_t i = 0, j = 0;
    double left = 0.0;
    while (i < vf.size() && j < vg.size()) {
        const double right = std::min(bf[i + 1], bg[j + 1]);
        visit((right - left) / horizon, vf[i], vg[j]);
        if (bf[i + 1] == right) ++i;
        if (bg[j + 1] == right) ++j;
        left = right;
    }
}

// Norm of a weighted sample of values; weights sum to 1.
template <typename ForEach>
double weighted_norm(ForEach &&for_each, PNorm p) {
    double largest = 0.0;
    for_each([&](double, double v) { largest = std::max(largest, std::abs(v)); });
    if (largest == 0.0 || p.is_infinite()) return largest;

    const double exponent = p.value();
    double acc = 0.0;
    if (exponent == 1.0) {
        for_each([&](double w, double v) { acc += std::abs(v) * w; });
        return acc;
    }
    // Scaling by the largest magnitude avoids overflow and keeps |c| exact for constants.
    for_each([&](double w, double v) { acc += std::pow(std::abs(v) / largest, exponent) * w; });
    return exponent == 2.0 ? largest * std::sqrt(acc) : largest * std::pow(acc, 1.0 / exponent);
}

} // namespace

double lp_norm(const StepFunction &f, PNorm p) {
    const auto b = f.breakpoints();
    const auto v = f.values();
    const double horizon = f.horizon();
    return weighted_norm(
        [&](auto &&visit) {
            for (std::size_t i = 0; i < v.size(); ++i) visit((b[i + 1] - b[i]) / horizon, v[i]);
        },
        p);
}

double lp_distance(const StepFunction &f, const StepFunction &g, PNorm p) {
    require_same_domain(f, g);
    return weighted_norm(
        [&](auto &&visit) { for_each_cell(f, g, [&](double w, double a, double b) { visit(w, a - b); }); },
        p);
}

double inner_product(const StepFunction &f, const StepFunction &g) {
    require_same_domain(f, g);
    double acc = 0.0;
    for_each_cell(f, g, [&](double w, double a, double b) { acc += a * b * w; });
    return acc;
}

StepFunction normalize(const StepFunction &f, PNorm p) {
    const double norm = lp_norm(f, p);
    if (norm == 0.0) throw Error(ErrorCode::ZeroFunction, "cannot normalize the zero function");
    std::vector<double> values(f.values().begin(), f.values().end());
    for (double &v : values) v /= norm;
    return StepFunction(std::vector<double>(f.breakpoints().begin(), f.breakpoints().end()), std::move(values));
}

StepFunction embed(const TimeSeries &series, const DetectionParams &params) {
    return step_function(series, detect_change_points(series, params), params.attribute);
}

StepFunction step_function(const TimeSeries &series, const ChangePointSet &cps, Attribute attribute) {
    auto stats = segment_statistics(series, cps, attribute);
    std::vector<double> breakpoints;
    breakpoints.reserve(cps.size() + 2);
    breakpoints.push_back(0.0);
    for (auto c : cps.points()) breakpoints.push_back(static_cast<double>(c));
    breakpoints.push_back(static_cast<double>(series.horizon()));
    return StepFunction(std::move(breakpoints), std::move(stats));
}

double magnitude(const TimeSeries &series, const DetectionParams &params, PNorm p) {
    return lp_norm(embed(series, params), p);
}

bool are_equivalent(const StepFunction &f, const StepFunction &g) {
    require_same_domain(f, g);
    return f == g;
}

std::string to_json(const StepFunction &f) {
    nlohmann::json j;
    j["breakpoints"] = std::vector<double>(f.breakpoints().begin(), f.breakpoints().end());
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    return j.dump();
}

StepFunction step_function_from_json(const std::string &text) {
    try {
        const auto j = nlohmann::json::parse(text);
        return StepFunction(j.at("breakpoints").get<std::vector<double>>(), j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed step function JSON: ") + e.what());
    }
}

} // namespace tsequiv
