#pragma once

#include <cstddef>
#include <span>

namespace tsequiv {

// Distances between finite sets of change-point indices, measured in index
// units. All of them throw EmptySet when either set is empty. Use
// ChangePointSet::points() to pass detected sets.

// max(max_s d(s,T), max_t d(t,S)).
double hausdorff(std::span<const std::size_t> s, std::span<const std::size_t> t);

// max(mean_s d(s,T), mean_t d(t,S)).
double modified_hausdorff(std::span<const std::size_t> s, std::span<const std::size_t> t);

// (sum_t d(t,S)^p / (2|T|) + sum_s d(s,T)^p / (2|S|))^(1/p), p >= 1.
double mj_semi_metric(std::span<const std::size_t> s, std::span<const std::size_t> t, double p = 1.0);

} // namespace tsequiv
