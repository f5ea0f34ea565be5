#include "tsequiv/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "tsequiv/error.hpp"
#include "tsequiv/io.hpp"
#include "tsequiv/random.hpp"

namespace tsequiv {

std::string_view to_string(Linkage linkage) {
    switch (linkage) {
    case Linkage::Single: return "single";
    case Linkage::Average: return "average";
    case Linkage::Complete: return "complete";
    }
    return "unknown";
}

Linkage parse_linkage(std::string_view text) {
    if (text == "single") return Linkage::Single;
    if (text == "average") return Linkage::Average;
    if (text == "complete") return Linkage::Complete;
    throw Error(ErrorCode::InvalidArgument, "unknown linkage '" + std::string(text) + "'");
}

std::vector<std::size_t> Dendrogram::members(std::size_t node) const {
    const std::size_t n = leaves();
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        const auto id = stack.back();
        stack.pop_back();
        if (id < n) {
            out.push_back(id);
        } else {
            const auto &m = merges.at(id - n);
            stack.push_back(m.left);
            stack.push_back(m.right);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> Dendrogram::last_merged_leaf() const {
    if (merges.empty()) return std::nullopt;
    const auto &root = merges.back();
    const std::size_t n = leaves();
    const bool left_leaf = root.left < n;
    const bool right_leaf = root.right < n;
    if (left_leaf == right_leaf) return std::nullopt;
    return left_leaf ? root.left : root.right;
}

Dendrogram hierarchical_cluster(const LabeledSquareMatrix &matrix, Linkage linkage) {
    const auto distance = to_dissimilarity(matrix);
    const std::size_t n = static_cast<std::size_t>(distance.size());
    Dendrogram out{distance.labels(), {}};
    if (n < 2) return out;

    Eigen::MatrixXd d = distance.entries();
    std::vector<bool> active(n, true);
    std::vector<std::size_t> node(n), size(n, 1);
    std::iota(node.begin(), node.end(), std::size_t{0});

    // A cluster lives in the slot of its smallest leaf, so scanning slots in
    // order breaks ties by label order.
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t bi = n, bj = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                const double v = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (bi == n || v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }

        out.merges.push_back({node[bi], node[bj], best, size[bi] + size[bj]});
        const auto ii = static_cast<Eigen::Index>(bi);
        const auto jj = static_cast<Eigen::Index>(bj);
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            const auto kk = static_cast<Eigen::Index>(k);
            const double a = d(ii, kk);
            const double b = d(jj, kk);
            double merged = 0.0;
            switch (linkage) {
            case Linkage::Single: merged = std::min(a, b); break;
            case Linkage::Complete: merged = std::max(a, b); break;
            case Linkage::Average:
                merged = (static_cast<double>(size[bi]) * a + static_cast<double>(size[bj]) * b) /
                         static_cast<double>(size[bi] + size[bj]);
                break;
            }
            d(ii, kk) = d(kk, ii) = merged;
        }
        active[bj] = false;
        size[bi] += size[bj];
        node[bi] = n + step;
    }
    return out;
}

namespace {

// Renumbers cluster ids by first appearance in leaf order.
ClusterAssignment canonical_assignment(std::vector<std::string> labels, const std::vector<std::size_t> &raw) {
    ClusterAssignment out{std::move(labels), std::vector<std::size_t>(raw.size()), 0};
    std::vector<std::size_t> remap;
    std::vector<bool> seen;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] >= remap.size()) {
            remap.resize(raw[i] + 1);
            seen.resize(raw[i] + 1, false);
        }
        if (!seen[raw[i]]) {
            seen[raw[i]] = true;
            remap[raw[i]] = out.k++;
        }
        out.cluster[i] = remap[raw[i]];
    }
    return out;
}

} // namespace

ClusterAssignment cut_dendrogram(const Dendrogram &dendrogram, std::size_t k) {
    const std::size_t n = dendrogram.leaves();
    if (k < 1 || k > n) {
        throw Error(ErrorCode::BadK, "k = " + std::to_string(k) + " is outside [1, " + std::to_string(n) + "]");
    }
    std::vector<std::size_t> raw(n);
    std::iota(raw.begin(), raw.end(), std::size_t{0});
    for (std::size_t step = 0; step < n - k; ++step) {
        const auto &m = dendrogram.merges.at(step);
        const auto left = dendrogram.members(m.left).front();
        for (auto leaf : dendrogram.members(m.right)) raw[leaf] = raw[left];
        for (auto leaf : dendrogram.members(m.left)) raw[leaf] = raw[left];
    }
    return canonical_assignment(dendrogram.labels, raw);
}

namespace {

Eigen::MatrixXd normalized_laplacian(const LabeledSquareMatrix &affinity) {
    const auto a = to_similarity(affinity).entries();
    const Eigen::VectorXd degree = a.rowwise().sum();
    for (Eigen::Index i = 0; i < degree.size(); ++i) {
        if (!(degree(i) > 0.0)) {
            throw Error(ErrorCode::DisconnectedDegenerate,
                        "row '" + affinity.labels()[static_cast<std::size_t>(i)] + "' has zero total affinity");
        }
    }
    const Eigen::VectorXd inv_sqrt = degree.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd l = -(inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal());
    l.diagonal().array() += 1.0;
    // Symmetrize away rounding so the self-adjoint solver sees an exact symmetric input.
    return (0.5 * (l + l.transpose())).eval();
}

struct KMeansResult {
    std::vector<std::size_t> assignment;
    double inertia = std::numeric_limits<double>::infinity();
};

KMeansResult kmeans(const Eigen::MatrixXd &points, std::size_t k, Rng &rng) {
    const auto n = static_cast<std::size_t>(points.rows());
    auto row = [&](std::size_t i) { return points.row(static_cast<Eigen::Index>(i)); };

    // Farthest-point seeding from a random first point.
    std::vector<std::size_t> seeds{static_cast<std::size_t>(rng.below(n))};
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (seeds.size() < k) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], (row(i) - row(seeds.back())).squaredNorm());
            if (nearest[i] > far_d) {
                far_d = nearest[i];
                far = i;
            }
        }
        seeds.push_back(far);
    }
    Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), points.cols());
    for (std::size_t c = 0; c < k; ++c) centers.row(static_cast<Eigen::Index>(c)) = row(seeds[c]);

    KMeansResult result;
    result.assignment.assign(n, k);
    std::vector<double> dist(n);
    for (int iter = 0; iter < 300; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double v = (row(i) - centers.row(static_cast<Eigen::Index>(c))).squaredNorm();
                if (v < best_d) {
                    best_d = v;
                    best = c;
                }
            }
            dist[i] = best_d;
            if (result.assignment[i] != best) {
                result.assignment[i] = best;
                changed = true;
            }
        }
        // Refill empty clusters with the worst-served point of a shared cluster.
        std::vector<std::size_t> counts(k, 0);
        for (auto c : result.assignment) ++counts[c];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t worst = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[result.assignment[i]] > 1 && (worst == n || dist[i] > dist[worst])) worst = i;
            }
            --counts[result.assignment[worst]];
            result.assignment[worst] = c;
            counts[c] = 1;
            dist[worst] = 0.0;
            changed = true;
        }
        if (!changed && iter > 0) break;

        centers.setZero();
        for (std::size_t i = 0; i < n; ++i) centers.row(static_cast<Eigen::Index>(result.assignment[i])) += row(i);
        for (std::size_t c = 0; c < k; ++c) centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
    }

    result.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        result.inertia += (row(i) - centers.row(static_cast<Eigen::Index>(result.assignment[i]))).squaredNorm();
    }
    return result;
}

} // namespace

Eigen::VectorXd laplacian_spectrum(const LabeledSquareMatrix &affinity) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_laplacian(affinity), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

ClusterAssignment spectral_cluster(const LabeledSquareMatrix &affinity, std::size_t k, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(affinity.size());
    if (k < 1 || k > n) {
        throw Error(ErrorCode::BadK, "k = " + std::to_string(k) + " is outside [1, " + std::to_string(n) + "]");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_laplacian(affinity));
    Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < embedding.rows(); ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) embedding.row(i) /= norm;
    }

    constexpr std::size_t kRestarts = 10;
    KMeansResult best;
    for (std::size_t r = 0; r < kRestarts; ++r) {
        Rng rng(seed, r);
        auto candidate = kmeans(embedding, k, rng);
        if (candidate.inertia < best.inertia) best = std::move(candidate);
    }
    return canonical_assignment(affinity.labels(), best.assignment);
}

std::size_t eigengap_k(const LabeledSquareMatrix &affinity, std::size_t k_max) {
    const auto n = static_cast<std::size_t>(affinity.size());
    if (n < 2) return 1;
    const auto lambda = laplacian_spectrum(affinity);
    const std::size_t upper = std::max<std::size_t>(1, std::min(k_max, n - 1));
    std::size_t best_k = 1;
    double best_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= upper; ++k) {
        const double gap = lambda(static_cast<Eigen::Index>(k)) - lambda(static_cast<Eigen::Index>(k - 1));
        if (gap > best_gap) {
            best_gap = gap;
            best_k = k;
        }
    }
    return best_k;
}

namespace {

std::string newick_label(const std::string &label) {
    if (label.find_first_of("()[]':;, \t") == std::string::npos && !label.empty()) return label;
    std::string quoted = "'";
    for (char c : label) {
        if (c == '\'') quoted += '\'';
        quoted += c;
    }
    return quoted + "'";
}

void write_newick(const Dendrogram &d, std::size_t node, double parent_height, std::string &out) {
    const std::size_t n = d.leaves();
    double height = 0.0;
    if (node < n) {
        out += newick_label(d.labels[node]);
    } else {
        const auto &m = d.merges[node - n];
        height = m.height;
        out += '(';
        write_newick(d, m.left, height, out);
        out += ',';
        write_newick(d, m.right, height, out);
        out += ')';
    }
    out += ':';
    out += format_double(parent_height - height);
}

} // namespace

std::string to_newick(const Dendrogram &dendrogram) {
    const std::size_t n = dendrogram.leaves();
    if (n == 0) return ";";
    if (n == 1) return newick_label(dendrogram.labels[0]) + ";";
    std::string out;
    const auto &m = dendrogram.merges.back();
    out += '(';
    write_newick(dendrogram, m.left, m.height, out);
    out += ',';
    write_newick(dendrogram, m.right, m.height, out);
    out += ");";
    return out;
}

} // namespace tsequiv
