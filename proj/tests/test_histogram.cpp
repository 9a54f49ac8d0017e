#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hdc/histogram.hpp"

using namespace hdc;

namespace {

// independent slow path: walk the boundaries until the interval fits
std::size_t linear_scan_bin(double v, const BinBoundaries& b) {
    std::size_t k = 0;
    while (k < b.inner.size() && v >= b.inner[k]) ++k;
    return k;
}

}  // namespace

TEST_CASE("equal-width boundaries on a two-point sample", "[histogram]") {
    const BinBoundaries b = equal_width_boundaries({0.0, 1.0}, 4);
    REQUIRE(b.inner.size() == 3);
    CHECK(b.inner[0] == 0.0);
    CHECK(b.inner[1] == 0.5);
    CHECK(b.inner[2] > 1.0);
    CHECK(b.width == 0.5);
}

TEST_CASE("zero-range sample falls back to eps-wide bins", "[histogram]") {
    const BinBoundaries b = equal_width_boundaries({5.0, 5.0, 5.0}, 5);
    REQUIRE(b.inner.size() == 4);
    for (std::size_t k = 1; k < b.inner.size(); ++k) CHECK(b.inner[k - 1] < b.inner[k]);
    CHECK(bin_of(5.0, b) == 1);
    const Histogram h = histogram({5.0, 5.0, 5.0}, b);
    CHECK(h.freqs[1] == 1.0);
}

TEST_CASE("outer bins are empty under equal-width boundaries", "[histogram]") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(1000);
    for (double& v : x) v = u(rng);
    const BinBoundaries b = equal_width_boundaries(x, 12);
    const Histogram h = histogram(x, b);
    CHECK(h.freqs.front() == 0.0);
    CHECK(h.freqs.back() == 0.0);
}

TEST_CASE("hand-counted four-point histogram", "[histogram]") {
    const std::vector<double> x = {0.0, 0.4, 0.6, 1.0};
    const Histogram h = histogram(x, equal_width_boundaries(x, 4));
    REQUIRE(h.freqs.size() == 4);
    CHECK(h.freqs[0] == 0.0);
    CHECK(h.freqs[1] == 0.5);
    CHECK(h.freqs[2] == 0.5);
    CHECK(h.freqs[3] == 0.0);
}

TEST_CASE("point mass lands in a single bin", "[histogram]") {
    const BinBoundaries b = BinBoundaries::from_inner({-1.0, 1.0, 2.0});
    const Histogram h = histogram({0.0, 0.0, 0.0, 0.0}, b);
    CHECK(h.freqs[1] == 1.0);
    CHECK(h.freqs[0] + h.freqs[2] + h.freqs[3] == 0.0);
}

TEST_CASE("histogram frequencies match a linear interval scan", "[histogram]") {
    std::mt19937 rng(23);
    std::normal_distribution<double> d(0.0, 2.0);
    std::vector<double> x(200);
    for (double& v : x) v = d(rng);
    const BinBoundaries b = BinBoundaries::from_inner({-3.0, -1.2, -0.4, 0.1, 1.7, 4.0});
    const Histogram h = histogram(x, b);

    std::vector<double> expected(b.bin_count(), 0.0);
    for (double v : x) expected[linear_scan_bin(v, b)] += 1.0 / 200.0;
    for (std::size_t k = 0; k < expected.size(); ++k)
        CHECK_THAT(h.freqs[k], Catch::Matchers::WithinAbs(expected[k], 1e-15));

    double total = 0.0;
    for (double f : h.freqs) total += f;
    CHECK(std::fabs(total - 1.0) <= 1e-12);
}

TEST_CASE("bin_of boundary membership", "[histogram]") {
    const BinBoundaries b = equal_width_boundaries({0.0, 10.0}, 5);
    CHECK(bin_of(-0.5, b) == 0);
    CHECK(bin_of(b.inner.front(), b) == 1);          // a_1 itself belongs to bin 1
    CHECK(bin_of(b.inner.back(), b) == 4);           // value >= a_{nb-1}
    CHECK(bin_of(10.0, b) == 3);                     // max(x) stays inside
}

TEST_CASE("bin_of agrees with linear scan and binary search", "[histogram]") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> sample(20);
        for (double& v : sample) v = u(rng);
        const std::size_t nb = 3 + static_cast<std::size_t>(trial % 17);
        const BinBoundaries fast = equal_width_boundaries(sample, nb);
        BinBoundaries slow = BinBoundaries::from_inner(fast.inner);  // binary-search path
        for (int k = 0; k < 50; ++k) {
            const double v = u(rng);
            const std::size_t expect = linear_scan_bin(v, fast);
            CHECK(bin_of(v, fast) == expect);
            CHECK(bin_of(v, slow) == expect);
        }
        // exact boundary values are the adversarial cases for the closed form
        for (double v : fast.inner) {
            CHECK(bin_of(v, fast) == linear_scan_bin(v, fast));
            CHECK(bin_of(v, slow) == linear_scan_bin(v, fast));
        }
    }
}

TEST_CASE("histogram input validation", "[histogram]") {
    CHECK_THROWS_WITH(equal_width_boundaries({}, 5), "empty sample");
    CHECK_THROWS_WITH(equal_width_boundaries({1.0}, 2), "need at least 3 bins");
    CHECK_THROWS(histogram({}, equal_width_boundaries({0.0, 1.0}, 3)));
    CHECK_THROWS(BinBoundaries::from_inner({1.0, 1.0}));
}

TEST_CASE("bin frequencies are unbiased cell-probability estimates", "[histogram]") {
    // light version of the Monte Carlo check run by the acceptance suite
    const BinBoundaries b = BinBoundaries::from_inner({0.0, 0.25, 0.5, 0.75, 1.0});
    const std::vector<double> p = {0.0, 0.25, 0.25, 0.25, 0.25, 0.0};
    const std::size_t reps = 400, size = 50;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> mean(b.bin_count(), 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        std::vector<double> x(size);
        for (double& v : x) v = u(rng);
        const Histogram h = histogram(x, b);
        for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += h.freqs[k];
    }
    for (std::size_t k = 0; k < mean.size(); ++k) {
        mean[k] /= static_cast<double>(reps);
        const double bound =
            4.0 * std::sqrt(p[k] * (1.0 - p[k]) / static_cast<double>(reps * size));
        CHECK(std::fabs(mean[k] - p[k]) <= bound);
    }
}
