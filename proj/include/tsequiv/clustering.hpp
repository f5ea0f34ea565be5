#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsequiv/matrices.hpp"

namespace tsequiv {

enum class Linkage { Single, Average, Complete };

std::string_view to_string(Linkage linkage);
Linkage parse_linkage(std::string_view text);

// Node ids follow the usual convention: leaves are 0..n-1 and the i-th merge
// creates node n + i.
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::size_t size = 0;
};

struct Dendrogram {
    std::vector<std::string> labels;
    std::vector<Merge> merges; // n - 1 entries, in merge order

    std::size_t leaves() const noexcept { return labels.size(); }
    // Leaf indices under `node`, ascending.
    std::vector<std::size_t> members(std::size_t node) const;
    // Leaf joined alone at the final merge, if any.
    std::optional<std::size_t> last_merged_leaf() const;
};

struct ClusterAssignment {
    std::vector<std::string> labels;
    std::vector<std::size_t> cluster; // cluster[i] in [0, k); numbered by first appearance
    std::size_t k = 0;
};

/// Agglomerative clustering over a dissimilarity matrix (any kind is accepted
/// after to_dissimilarity()). Ties in the minimum inter-cluster distance go to
/// the pair whose smallest member leaves come first in label order.
Dendrogram hierarchical_cluster(const LabeledSquareMatrix &distance, Linkage linkage = Linkage::Average);

// Flat clusters obtained by undoing the k - 1 last merges. Throws BadK.
ClusterAssignment cut_dendrogram(const Dendrogram &dendrogram, std::size_t k);

/// Normalized-Laplacian spectral clustering.
///
/// Embeds each row into the k eigenvectors of I - D^{-1/2} A D^{-1/2} with the
/// smallest eigenvalues, rescales rows to unit length, and runs k-means with
/// farthest-point seeding. Ten restarts are made, each starting from a point
/// drawn from a stream keyed on (seed, restart); the lowest inertia wins,
/// ties to the earliest restart. Alignment matrices are shifted to [0, 1]
/// first. Throws DisconnectedDegenerate if a row sums to zero, BadK if k is
/// out of range.
ClusterAssignment spectral_cluster(const LabeledSquareMatrix &affinity, std::size_t k, std::uint64_t seed = 0);

// Eigenvalues of the normalized Laplacian, ascending.
Eigen::VectorXd laplacian_spectrum(const LabeledSquareMatrix &affinity);

// argmax_k (lambda_{k+1} - lambda_k) over 1 <= k <= k_max (clamped to n - 1);
// the smallest k wins ties. Returns 1 for n == 1.
std::size_t eigengap_k(const LabeledSquareMatrix &affinity, std::size_t k_max);

// Newick text with merge heights turned into branch lengths.
std::string to_newick(const Dendrogram &dendrogram);

} // namespace tsequiv
