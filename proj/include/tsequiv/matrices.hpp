#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tsequiv/stepfn.hpp"

namespace tsequiv {

enum class MatrixKind { Distance, Affinity, Alignment, Consistency };

std::string_view to_string(MatrixKind kind);

// Square matrix over a labeled collection. Construction checks shape and
// label uniqueness only; check_invariants() tests the kind's algebraic rules.
class LabeledSquareMatrix {
public:
    LabeledSquareMatrix(std::vector<std::string> labels, Eigen::MatrixXd entries, MatrixKind kind);

    const std::vector<std::string> &labels() const noexcept { return labels_; }
    const Eigen::MatrixXd &entries() const noexcept { return entries_; }
    MatrixKind kind() const noexcept { return kind_; }
    Eigen::Index size() const noexcept { return entries_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
    std::vector<std::string> labels_;
    Eigen::MatrixXd entries_;
    MatrixKind kind_;
};

// Empty string when the matrix satisfies its kind's invariants exactly,
// otherwise a description of the first violation.
//   Distance:    symmetric, zero diagonal, nonnegative
//   Affinity:    symmetric, unit diagonal, entries in [0, 1]
//   Alignment:   symmetric, unit diagonal, entries in [-1, 1]
//   Consistency: symmetric, entries in [-1, 1]
std::string check_invariants(const LabeledSquareMatrix &m);

// Labels default to "0".."n-1" when `labels` is empty.
LabeledSquareMatrix unscaled_distance_matrix(std::span<const StepFunction> fs, PNorm p,
                                             std::vector<std::string> labels = {});
LabeledSquareMatrix normalized_distance_matrix(std::span<const StepFunction> fs, PNorm p,
                                               std::vector<std::string> labels = {});
// Cosine of the L^2 angle between embeddings, clamped to [-1, 1].
LabeledSquareMatrix alignment_matrix(std::span<const StepFunction> fs, std::vector<std::string> labels = {});

// A = 1 - D / max D; all ones when max D = 0.
LabeledSquareMatrix to_affinity(const LabeledSquareMatrix &distance);

// A - A_G. Throws LabelMismatch.
LabeledSquareMatrix consistency_matrix(const LabeledSquareMatrix &affinity,
                                       const LabeledSquareMatrix &context_affinity);

// (1/n^2) * sum |c_ij|, diagonal included.
double matrix_norm(const LabeledSquareMatrix &m);

// Dissimilarity used for hierarchical clustering of any matrix kind:
//   Distance -> itself, Affinity -> 1 - A, Alignment -> 1 - Omega,
//   Consistency -> |C| (pairwise inconsistency).
LabeledSquareMatrix to_dissimilarity(const LabeledSquareMatrix &m);

// Affinity used for spectral clustering of any matrix kind:
//   Distance -> to_affinity, Affinity -> itself,
//   Alignment -> (Omega + 1) / 2 with unit diagonal, Consistency -> max(0, 1 - |C|).
LabeledSquareMatrix to_similarity(const LabeledSquareMatrix &m);

} // namespace tsequiv
