#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tsequiv/changepoint.hpp"
#include "tsequiv/timeseries.hpp"

namespace tsequiv {

// Exponent of an L^p norm: p >= 1 or +infinity.
class PNorm {
public:
    explicit PNorm(double p);
    static PNorm infinity() { return PNorm(std::numeric_limits<double>::infinity()); }
    static PNorm parse(const std::string &text); // "1", "2.5", "inf"

    double value() const noexcept { return p_; }
    bool is_infinite() const noexcept { return p_ == std::numeric_limits<double>::infinity(); }
    std::string to_string() const;

    friend bool operator==(PNorm, PNorm) = default;

private:
    double p_;
};

/// Piecewise-constant function on [0, H], stored in canonical form.
///
/// Values live on the open intervals (b_i, b_{i+1}); values at breakpoints are
/// irrelevant. Adjacent intervals with bitwise-equal values are merged on
/// construction, so two StepFunctions are equal almost everywhere exactly when
/// their breakpoint and value sequences are identical.
class StepFunction {
public:
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    static StepFunction constant(double value, double horizon);

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> values() const noexcept { return values_; }
    double horizon() const noexcept { return breakpoints_.back(); }
    std::size_t pieces() const noexcept { return values_.size(); }

    // Value on the open interval containing x; at a breakpoint, the value to its right.
    double operator()(double x) const;

    friend bool operator==(const StepFunction &, const StepFunction &) = default;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

// The embedding: change points, then per-segment statistics, then canonical form.
StepFunction embed(const TimeSeries &series, const DetectionParams &params);
// Second half of embed() for change points that are already known.
StepFunction step_function(const TimeSeries &series, const ChangePointSet &change_points, Attribute attribute);

// ((1/H) * integral |f|^p)^(1/p), or sup |f| for p = infinity.
double lp_norm(const StepFunction &f, PNorm p);

// ||f - g||_p evaluated on the merged partition. Throws DomainMismatch.
double lp_distance(const StepFunction &f, const StepFunction &g, PNorm p);

// (1/H) * integral f g. Throws DomainMismatch.
double inner_product(const StepFunction &f, const StepFunction &g);

// f / ||f||_p. Throws ZeroFunction.
StepFunction normalize(const StepFunction &f, PNorm p);

// Magnitude of a series: the norm of its embedding. Not a norm on series;
// there is deliberately no series-difference overload.
double magnitude(const TimeSeries &series, const DetectionParams &params, PNorm p);
inline double magnitude(const StepFunction &embedded, PNorm p) { return lp_norm(embedded, p); }

// Equal almost everywhere. Throws DomainMismatch.
bool are_equivalent(const StepFunction &f, const StepFunction &g);

// {"breakpoints":[...],"values":[...]}; doubles round-trip exactly.
std::string to_json(const StepFunction &f);
StepFunction step_function_from_json(const std::string &text);

} // namespace tsequiv
