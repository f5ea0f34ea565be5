#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "tsequiv/error.hpp"
#include "tsequiv/random.hpp"
#include "tsequiv/set_metrics.hpp"

using namespace tsequiv;
using Set = std::vector<std::size_t>;

namespace {

// Full |S| x |T| table of point distances, then the definitions read off it.
struct Table {
    std::vector<std::vector<double>> d;
    Table(const Set &s, const Set &t) : d(s.size(), std::vector<double>(t.size())) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = 0; j < t.size(); ++j) {
                d[i][j] = std::abs(static_cast<double>(s[i]) - static_cast<double>(t[j]));
            }
        }
    }
    double row_min(std::size_t i) const { return *std::min_element(d[i].begin(), d[i].end()); }
    double col_min(std::size_t j) const {
        double m = d[0][j];
        for (const auto &row : d) m = std::min(m, row[j]);
        return m;
    }
};

double oracle_h(const Set &s, const Set &t) {
    Table tb(s, t);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) a = std::max(a, tb.row_min(i));
    for (std::size_t j = 0; j < t.size(); ++j) b = std::max(b, tb.col_min(j));
    return std::max(a, b);
}

double oracle_mh(const Set &s, const Set &t) {
    Table tb(s, t);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) a += tb.row_min(i);
    for (std::size_t j = 0; j < t.size(); ++j) b += tb.col_min(j);
    return std::max(a / static_cast<double>(s.size()), b / static_cast<double>(t.size()));
}

double oracle_mj(const Set &s, const Set &t, double p) {
    Table tb(s, t);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) a += std::pow(tb.row_min(i), p);
    for (std::size_t j = 0; j < t.size(); ++j) b += std::pow(tb.col_min(j), p);
    return std::pow(b / (2.0 * static_cast<double>(t.size())) + a / (2.0 * static_cast<double>(s.size())), 1.0 / p);
}

Set random_set(Rng &rng) {
    std::set<std::size_t> s;
    const std::size_t k = 1 + static_cast<std::size_t>(rng.below(6));
    while (s.size() < k) s.insert(1 + static_cast<std::size_t>(rng.below(40)));
    return {s.begin(), s.end()};
}

} // namespace

TEST_CASE("hausdorff examples") {
    const Set s{2, 5, 9};
    CHECK(hausdorff(s, s) == 0.0);
    CHECK(hausdorff(Set{0, 10}, Set{0}) == 10.0);
    CHECK(hausdorff(Set{2, 5}, Set{3, 9}) == 4.0);
}

TEST_CASE("modified hausdorff examples") {
    CHECK(modified_hausdorff(Set{4, 8}, Set{4, 8}) == 0.0);
    CHECK(modified_hausdorff(Set{0, 10}, Set{0}) == 5.0);
}

TEST_CASE("mj examples") {
    CHECK(mj_semi_metric(Set{4, 8}, Set{4, 8}) == 0.0);
    CHECK(mj_semi_metric(Set{0, 10}, Set{0}) == 2.5);
    // Equal directed averages: MJ and MH coincide.
    CHECK(mj_semi_metric(Set{1, 5}, Set{2, 6}) == modified_hausdorff(Set{1, 5}, Set{2, 6}));
}

TEST_CASE("set metrics match the enumeration oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_set(rng), t = random_set(rng);
        CHECK(hausdorff(s, t) == oracle_h(s, t));
        CHECK(modified_hausdorff(s, t) == doctest::Approx(oracle_mh(s, t)).epsilon(1e-14));
        for (double p : {1.0, 2.0, 3.0}) {
            CHECK(mj_semi_metric(s, t, p) == doctest::Approx(oracle_mj(s, t, p)).epsilon(1e-12));
        }
        CHECK(hausdorff(s, t) == hausdorff(t, s));
        CHECK(modified_hausdorff(s, t) == modified_hausdorff(t, s));
        CHECK(mj_semi_metric(s, t) == mj_semi_metric(t, s));
        const bool same = s == t;
        CHECK((hausdorff(s, t) == 0.0) == same);
        CHECK((modified_hausdorff(s, t) == 0.0) == same);
        CHECK((mj_semi_metric(s, t) == 0.0) == same);
    }
}

TEST_CASE("unsorted input is accepted") {
    CHECK(hausdorff(Set{9, 2, 5}, Set{3, 9}) == hausdorff(Set{2, 5, 9}, Set{3, 9}));
}

TEST_CASE("empty sets are rejected") {
    for (auto fn : {+[](const Set &a, const Set &b) { return hausdorff(a, b); },
                    +[](const Set &a, const Set &b) { return modified_hausdorff(a, b); },
                    +[](const Set &a, const Set &b) { return mj_semi_metric(a, b); }}) {
        try {
            fn(Set{}, Set{3});
            FAIL("expected EmptySet");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::EmptySet);
        }
        CHECK_THROWS_AS(fn(Set{3}, Set{}), Error);
    }
}

TEST_CASE("extra change points shift set metrics no matter how small the offset") {
    // S = T = {100, 300}; the window [180, 180 + delta] sits in (100, 300).
    const Set base{100, 300};
    for (std::size_t delta : {1, 2, 5}) {
        const Set perturbed{100, 180, 180 + delta, 300};
        const double h = hausdorff(perturbed, base);
        CHECK(h >= std::min<double>(180 - 100, 300 - 180));
        CHECK(modified_hausdorff(perturbed, base) > 0.0);
        CHECK(mj_semi_metric(perturbed, base) > 0.0);
    }
}
