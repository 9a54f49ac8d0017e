#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "hdc/indicator.hpp"

using namespace hdc;

namespace {

ScaledMatrix random_scaled(Index m, Index n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    DataMatrix x(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) x(i, j) = u(rng);
    return ScaledMatrix{std::move(x), {}, std::nullopt};
}

CicList random_cics(Index n_cols, std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<Index> col(0, n_cols - 1);
    std::uniform_real_distribution<double> u(-2.5, 2.0);
    CicList cics;
    for (std::size_t k = 0; k < count; ++k) {
        const double lo = u(rng);
        cics.push_back(Cic{col(rng), lo, lo + 0.8});
    }
    return cics;
}

IndexSet iota_set(Index n) {
    IndexSet s(n);
    for (Index i = 0; i < n; ++i) s[i] = i;
    return s;
}

}  // namespace

TEST_CASE("empty cic list scores zero", "[indicator]") {
    const ScaledMatrix s = random_scaled(10, 3, 1);
    const IndicatorScores scores = indicator_scores(s, {}, iota_set(10));
    for (int v : scores.values) CHECK(v == 0);
}

TEST_CASE("object inside every peak bin scores the cic count", "[indicator]") {
    ScaledMatrix s = random_scaled(4, 3, 2);
    for (Index j = 0; j < 3; ++j) s.values(0, j) = 1.0;
    const CicList cics = {{0, 0.5, 1.5}, {1, 0.9, 1.1}, {2, 1.0, 2.0}};
    const IndicatorScores scores = indicator_scores(s, cics, {0});
    CHECK(scores.values[0] == 3);
}

TEST_CASE("half-open membership at the bin edges", "[indicator]") {
    ScaledMatrix s = random_scaled(2, 1, 3);
    s.values(0, 0) = 1.0;  // equals lo: counts
    s.values(1, 0) = 2.0;  // equals hi: does not
    const CicList cics = {{0, 1.0, 2.0}};
    const IndicatorScores scores = indicator_scores(s, cics, {0, 1});
    CHECK(scores.values[0] == 1);
    CHECK(scores.values[1] == 0);
}

TEST_CASE("scores equal a per-object per-cic membership loop", "[indicator]") {
    const ScaledMatrix s = random_scaled(500, 6, 4);
    const CicList cics = random_cics(6, 7, 5);
    const IndexSet domain = iota_set(500);
    const IndicatorScores scores = indicator_scores(s, cics, domain);

    for (std::size_t k = 0; k < domain.size(); ++k) {
        int expect = 0;
        for (const Cic& c : cics)
            if (s(domain[k], c.col) >= c.lo && s(domain[k], c.col) < c.hi) ++expect;
        CHECK(scores.values[k] == expect);
    }
}

TEST_CASE("scores are invariant under cic permutation", "[indicator]") {
    const ScaledMatrix s = random_scaled(100, 5, 6);
    CicList cics = random_cics(5, 6, 7);
    const IndexSet domain = iota_set(100);
    const IndicatorScores base = indicator_scores(s, cics, domain);
    std::mt19937 rng(8);
    std::shuffle(cics.begin(), cics.end(), rng);
    const IndicatorScores shuffled = indicator_scores(s, cics, domain);
    CHECK(base.values == shuffled.values);
}

TEST_CASE("patterns match a brute-force membership matrix", "[indicator]") {
    const ScaledMatrix s = random_scaled(200, 5, 9);
    const CicList cics = random_cics(5, 5, 10);
    const IndexSet domain = iota_set(200);
    const ActivityPatterns patterns = activity_patterns(s, cics, domain);
    const IndicatorScores scores = indicator_scores(s, cics, domain);

    REQUIRE(patterns.cic_count == cics.size());
    for (std::size_t k = 0; k < domain.size(); ++k) {
        for (std::size_t j = 0; j < cics.size(); ++j) {
            const double v = s(domain[k], cics[j].col);
            const bool expect = v >= cics[j].lo && v < cics[j].hi;
            CHECK(patterns.active(k, j) == expect);
        }
        CHECK(patterns.weight(k) == scores.values[k]);
    }
}

TEST_CASE("no active cic gives the all-zero pattern", "[indicator]") {
    ScaledMatrix s = random_scaled(3, 2, 11);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 2; ++j) s.values(i, j) = -10.0;
    const CicList cics = {{0, 0.0, 1.0}, {1, 0.0, 1.0}};
    const ActivityPatterns patterns = activity_patterns(s, cics, {0, 1, 2});
    for (std::size_t k = 0; k < 3; ++k) CHECK(patterns.weight(k) == 0);
}

TEST_CASE("out-of-range cic column is rejected", "[indicator]") {
    const ScaledMatrix s = random_scaled(5, 2, 12);
    const CicList bad = {{7, 0.0, 1.0}};
    CHECK_THROWS_WITH(indicator_scores(s, bad, {0}), "cic column out of matrix range");
    CHECK_THROWS_WITH(activity_patterns(s, bad, {0}), "cic column out of matrix range");
}
