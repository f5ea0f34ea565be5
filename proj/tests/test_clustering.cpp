#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tsequiv/clustering.hpp"
#include "tsequiv/error.hpp"
#include "tsequiv/matrices.hpp"
#include "tsequiv/random.hpp"

using namespace tsequiv;
using Partition = std::set<std::set<std::size_t>>;

namespace {

std::vector<std::string> names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

LabeledSquareMatrix random_distance(Rng &rng, std::size_t n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.rows(); ++j) m(i, j) = m(j, i) = 0.1 + rng.uniform();
    }
    return LabeledSquareMatrix(names(n), m, MatrixKind::Distance);
}

// Block-diagonal affinity: 1 inside blocks, `off` across them.
LabeledSquareMatrix block_affinity(const std::vector<std::size_t> &block_of, double off = 0.0) {
    const auto n = static_cast<Eigen::Index>(block_of.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = block_of[static_cast<std::size_t>(i)] == block_of[static_cast<std::size_t>(j)] ? 1.0 : off;
        }
    }
    return LabeledSquareMatrix(names(block_of.size()), a, MatrixKind::Affinity);
}

Partition partition_of(const std::vector<std::size_t> &cluster) {
    std::map<std::size_t, std::set<std::size_t>> groups;
    for (std::size_t i = 0; i < cluster.size(); ++i) groups[cluster[i]].insert(i);
    Partition out;
    for (auto &[_, g] : groups) out.insert(g);
    return out;
}

// Naive agglomeration that recomputes every inter-cluster distance from the
// original matrix at each step. Returns (merged members, height) per step.
std::vector<std::pair<std::set<std::size_t>, double>> brute_force(const LabeledSquareMatrix &d, Linkage linkage) {
    std::vector<std::set<std::size_t>> clusters;
    for (Eigen::Index i = 0; i < d.size(); ++i) clusters.push_back({static_cast<std::size_t>(i)});
    std::vector<std::pair<std::set<std::size_t>, double>> steps;
    while (clusters.size() > 1) {
        double best = 1e300;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double agg = linkage == Linkage::Single ? 1e300 : 0.0;
                for (auto a : clusters[i]) {
                    for (auto b : clusters[j]) {
                        const double v = d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                        if (linkage == Linkage::Single) agg = std::min(agg, v);
                        else if (linkage == Linkage::Complete) agg = std::max(agg, v);
                        else agg += v;
                    }
                }
                if (linkage == Linkage::Average) agg /= static_cast<double>(clusters[i].size() * clusters[j].size());
                if (agg < best) {
                    best = agg;
                    bi = i;
                    bj = j;
                }
            }
        }
        std::set<std::size_t> merged = clusters[bi];
        merged.insert(clusters[bj].begin(), clusters[bj].end());
        steps.emplace_back(merged, best);
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        clusters[bi] = merged;
    }
    return steps;
}

std::vector<std::pair<std::set<std::size_t>, double>> steps_of(const Dendrogram &d) {
    std::vector<std::pair<std::set<std::size_t>, double>> out;
    for (std::size_t i = 0; i < d.merges.size(); ++i) {
        const auto m = d.members(d.leaves() + i);
        out.emplace_back(std::set<std::size_t>(m.begin(), m.end()), d.merges[i].height);
    }
    return out;
}

} // namespace

TEST_CASE("two leaves merge once") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 3, 3, 0;
    const auto d = hierarchical_cluster(LabeledSquareMatrix({"a", "b"}, m, MatrixKind::Distance));
    REQUIRE(d.merges.size() == 1);
    CHECK(d.merges[0].height == 3.0);
    CHECK(d.merges[0].size == 2);
    CHECK(to_newick(d) == "(a:3,b:3);");
}

TEST_CASE("agglomeration matches a brute-force oracle") {
    Rng rng(51);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = random_distance(rng, 2 + static_cast<std::size_t>(rng.below(10)));
        for (Linkage l : {Linkage::Single, Linkage::Average, Linkage::Complete}) {
            const auto got = steps_of(hierarchical_cluster(d, l));
            const auto want = brute_force(d, l);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].first == want[i].first);
                CHECK(got[i].second == doctest::Approx(want[i].second).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("dendrogram structure invariants") {
    Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(10));
        const auto d = hierarchical_cluster(random_distance(rng, n), Linkage::Average);
        std::vector<int> seen(2 * n - 1, 0);
        for (std::size_t i = 0; i < d.merges.size(); ++i) {
            const auto &m = d.merges[i];
            ++seen[m.left];
            ++seen[m.right];
            CHECK(m.left < n + i);
            CHECK(m.right < n + i);
            for (auto child : {m.left, m.right}) {
                if (child >= n) CHECK(d.merges[child - n].height <= m.height);
            }
            CHECK(m.size == d.members(n + i).size());
        }
        for (std::size_t node = 0; node + 1 < 2 * n - 1; ++node) CHECK(seen[node] == 1);
        CHECK(d.members(2 * n - 2).size() == n);
    }
}

TEST_CASE("two separated blocks") {
    Eigen::MatrixXd m(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i) {
        for (Eigen::Index j = 0; j < 5; ++j) m(i, j) = i == j ? 0.0 : ((i < 2) == (j < 2) ? 0.1 : 10.0);
    }
    const LabeledSquareMatrix d(names(5), m, MatrixKind::Distance);
    for (Linkage l : {Linkage::Single, Linkage::Average, Linkage::Complete}) {
        const auto den = hierarchical_cluster(d, l);
        CHECK(den.merges.back().height == 10.0);
        CHECK(partition_of(cut_dendrogram(den, 2).cluster) == Partition{{0, 1}, {2, 3, 4}});
        CHECK(cut_dendrogram(den, 1).k == 1);
        CHECK(partition_of(cut_dendrogram(den, 5).cluster).size() == 5);
    }
    const auto den = hierarchical_cluster(d);
    for (std::size_t bad : {0, 6}) {
        try {
            cut_dendrogram(den, bad);
            FAIL("expected BadK");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::BadK);
        }
    }
}

TEST_CASE("relabeling permutes leaves but keeps heights") {
    Rng rng(53);
    const auto d = random_distance(rng, 8);
    std::vector<std::size_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<std::size_t>(perm));
    Eigen::MatrixXd pm(8, 8);
    std::vector<std::string> labels(8);
    for (std::size_t i = 0; i < 8; ++i) {
        labels[i] = d.labels()[perm[i]];
        for (std::size_t j = 0; j < 8; ++j) {
            pm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                d(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
        }
    }
    const auto a = hierarchical_cluster(d);
    const auto b = hierarchical_cluster(LabeledSquareMatrix(labels, pm, MatrixKind::Distance));
    for (std::size_t i = 0; i < a.merges.size(); ++i) {
        CHECK(a.merges[i].height == doctest::Approx(b.merges[i].height).epsilon(1e-12));
        std::set<std::string> la, lb;
        for (auto leaf : a.members(8 + i)) la.insert(a.labels[leaf]);
        for (auto leaf : b.members(8 + i)) lb.insert(b.labels[leaf]);
        CHECK(la == lb);
    }
}

TEST_CASE("merge trees on distances and on reversed affinities coincide") {
    Rng rng(54);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = random_distance(rng, 3 + static_cast<std::size_t>(rng.below(9)));
        const auto reversed = to_dissimilarity(to_affinity(d));
        for (Linkage l : {Linkage::Single, Linkage::Average, Linkage::Complete}) {
            const auto a = hierarchical_cluster(d, l), b = hierarchical_cluster(reversed, l);
            REQUIRE(a.merges.size() == b.merges.size());
            for (std::size_t i = 0; i < a.merges.size(); ++i) {
                CHECK(a.merges[i].left == b.merges[i].left);
                CHECK(a.merges[i].right == b.merges[i].right);
            }
        }
    }
}

TEST_CASE("ties go to the earliest pair") {
    const LabeledSquareMatrix d(names(4), Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4),
                                MatrixKind::Distance);
    const auto den = hierarchical_cluster(d, Linkage::Single);
    CHECK(den.merges[0].left == 0);
    CHECK(den.merges[0].right == 1);
    // The cluster {0, 1} keeps slot 0, so it pairs with leaf 2 next.
    CHECK(den.merges[1].left == 4);
    CHECK(den.merges[1].right == 2);
    CHECK(den.merges[2].left == 5);
    CHECK(den.merges[2].right == 3);
}

TEST_CASE("last merged leaf") {
    Eigen::MatrixXd m(3, 3);
    m << 0, 1, 5, 1, 0, 5, 5, 5, 0;
    const auto den = hierarchical_cluster(LabeledSquareMatrix({"a", "b", "c"}, m, MatrixKind::Distance));
    CHECK(den.last_merged_leaf() == std::optional<std::size_t>(2));
    CHECK(to_newick(den) == "((a:1,b:1):4,c:5);");
    Eigen::MatrixXd q(4, 4);
    q << 0, 1, 5, 5, 1, 0, 5, 5, 5, 5, 0, 1, 5, 5, 1, 0;
    CHECK_FALSE(hierarchical_cluster(LabeledSquareMatrix(names(4), q, MatrixKind::Distance)).last_merged_leaf());
}

TEST_CASE("newick quotes awkward labels") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 0.5, 0.5, 0;
    const auto d = hierarchical_cluster(LabeledSquareMatrix({"St (1)", "b"}, m, MatrixKind::Distance));
    CHECK(to_newick(d) == "('St (1)':0.5,b:0.5);");
}

TEST_CASE("spectral clustering recovers exact blocks") {
    Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 2 + static_cast<std::size_t>(rng.below(2));
        const std::size_t n = k + static_cast<std::size_t>(rng.below(12 - k + 1));
        std::vector<std::size_t> block(n);
        for (std::size_t i = 0; i < n; ++i) block[i] = i < k ? i : static_cast<std::size_t>(rng.below(k));
        rng.shuffle(std::span<std::size_t>(block));
        const auto a = block_affinity(block);
        // With n == k the gap index is clamped to n - 1.
        if (n > k) CHECK(eigengap_k(a, 10) == k);
        const auto got = spectral_cluster(a, k, rng.next());
        CHECK(got.k == k);
        CHECK(partition_of(got.cluster) == partition_of(block));
    }
}

TEST_CASE("spectral clustering basics") {
    const auto ones = LabeledSquareMatrix(names(5), Eigen::MatrixXd::Ones(5, 5), MatrixKind::Affinity);
    CHECK(spectral_cluster(ones, 1).cluster == std::vector<std::size_t>(5, 0));
    CHECK(eigengap_k(ones, 10) == 1);

    const auto two = block_affinity({0, 1, 0, 1, 1, 0}, 0.05);
    CHECK(eigengap_k(two, 5) == 2);
    const auto first = spectral_cluster(two, 2, 9);
    CHECK(first.cluster == spectral_cluster(two, 2, 9).cluster);
    CHECK(first.cluster == std::vector<std::size_t>{0, 1, 0, 1, 1, 0});

    const auto three = block_affinity({0, 0, 1, 1, 2, 2, 2});
    CHECK(eigengap_k(three, 6) == 3);

    try {
        spectral_cluster(two, 7);
        FAIL("expected BadK");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::BadK);
    }
    Eigen::MatrixXd z = Eigen::MatrixXd::Identity(3, 3);
    z(2, 2) = 0.0;
    try {
        spectral_cluster(LabeledSquareMatrix(names(3), z, MatrixKind::Affinity), 2);
        FAIL("expected DisconnectedDegenerate");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DisconnectedDegenerate);
    }
}

TEST_CASE("alignment input is shifted before spectral clustering") {
    Eigen::MatrixXd w(4, 4);
    w << 1, 0.9, -0.8, -0.9, 0.9, 1, -0.9, -0.8, -0.8, -0.9, 1, 0.95, -0.9, -0.8, 0.95, 1;
    const auto got = spectral_cluster(LabeledSquareMatrix(names(4), w, MatrixKind::Alignment), 2);
    CHECK(partition_of(got.cluster) == Partition{{0, 1}, {2, 3}});
}

TEST_CASE("linkage parsing") {
    CHECK(parse_linkage("single") == Linkage::Single);
    CHECK(parse_linkage("complete") == Linkage::Complete);
    CHECK(to_string(Linkage::Average) == "average");
    CHECK_THROWS_AS(parse_linkage("ward"), Error);
}
