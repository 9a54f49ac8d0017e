#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hdc {

/// Bin boundaries a_1 < ... < a_{nb-1}; a_0 = -inf and a_nb = +inf are
/// implicit, so nb bins partition the whole real line. Bin k is [a_k, a_{k+1})
/// except bin 0, which is open on the left.
struct BinBoundaries {
    std::vector<double> inner;  // strictly ascending, size nb-1
    bool equal_width = false;   // built by equal_width_boundaries
    double width = 0.0;         // inner bin width when equal_width

    std::size_t bin_count() const { return inner.size() + 1; }

    static BinBoundaries from_inner(std::vector<double> inner) {
        if (inner.size() < 2) throw std::invalid_argument("need at least 3 bins");
        for (std::size_t k = 1; k < inner.size(); ++k)
            if (!(inner[k - 1] < inner[k]))
                throw std::invalid_argument("boundaries must be strictly ascending");
        BinBoundaries b;
        b.inner = std::move(inner);
        return b;
    }
};

/// Boundaries whose inner bins have equal width (max-min)/(nb-2), with
/// a_1 = min(x) and a_{nb-1} = max(x) + eps so every sample lands in an
/// inner bin and the two outer bins stay empty. A zero range falls back to
/// eps-wide bins, putting all samples into bin 1.
inline BinBoundaries equal_width_boundaries(const std::vector<double>& x, std::size_t nb) {
    if (x.empty()) throw std::invalid_argument("empty sample");
    if (nb < 3) throw std::invalid_argument("need at least 3 bins");
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it, hi = *hi_it;
    const double eps = std::max(1e-9, 1e-9 * std::fabs(hi));

    BinBoundaries b;
    b.equal_width = true;
    b.inner.resize(nb - 1);
    if (hi == lo) {
        b.width = eps;
        for (std::size_t k = 0; k + 1 < nb; ++k)
            b.inner[k] = lo + static_cast<double>(k) * eps;
        return b;
    }
    b.width = (hi - lo) / static_cast<double>(nb - 2);
    for (std::size_t k = 0; k + 2 < nb; ++k)
        b.inner[k] = lo + static_cast<double>(k) * b.width;
    b.inner[nb - 2] = hi + eps;
    return b;
}

/// Index of the unique bin containing `value`. O(1) for equal-width
/// boundaries, binary search otherwise; both agree exactly.
inline std::size_t bin_of(double value, const BinBoundaries& b) {
    const std::size_t nb = b.bin_count();
    if (value < b.inner.front()) return 0;
    if (value >= b.inner.back()) return nb - 1;
    if (b.equal_width && b.width > 0.0) {
        double raw = std::floor((value - b.inner.front()) / b.width);
        std::size_t k = 1 + static_cast<std::size_t>(std::max(0.0, raw));
        k = std::min(k, nb - 2);
        // guard against rounding at bin edges: nudge until a_k <= value < a_{k+1}
        while (k > 1 && value < b.inner[k - 1]) --k;
        while (k < nb - 2 && value >= b.inner[k]) ++k;
        return k;
    }
    return static_cast<std::size_t>(
        std::upper_bound(b.inner.begin(), b.inner.end(), value) - b.inner.begin());
}

/// Relative bin frequencies of a sample: freqs[k] = |{x_i in I_k}| / |x|.
struct Histogram {
    BinBoundaries boundaries;
    std::vector<double> freqs;
    std::size_t sample_count = 0;
};

inline Histogram histogram(const std::vector<double>& x, const BinBoundaries& b) {
    if (x.empty()) throw std::invalid_argument("empty sample");
    Histogram h;
    h.boundaries = b;
    h.sample_count = x.size();
    std::vector<std::size_t> counts(b.bin_count(), 0);
    for (double v : x) ++counts[bin_of(v, b)];
    h.freqs.resize(counts.size());
    const double inv = 1.0 / static_cast<double>(x.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        h.freqs[k] = static_cast<double>(counts[k]) * inv;
    return h;
}

}  // namespace hdc
