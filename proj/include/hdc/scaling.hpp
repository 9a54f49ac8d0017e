#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hdc/matrix.hpp"

namespace hdc {

enum class StatsSource { full_matrix, training_only };

/// Divisor used for the standard deviation. `population` divides by k,
/// `sample` by k-1, `sample_n15` by k-1.5 (a lower-bias estimator under
/// normality).
enum class StdEstimator { population, sample, sample_n15 };

/// Per-column mean and standard deviation.
struct ColumnStats {
    std::vector<double> mean;
    std::vector<double> std;
    StatsSource source = StatsSource::full_matrix;
};

/// Column-wise stats over the whole matrix (population formula).
/// Row-major passes so large matrices stream instead of striding.
inline ColumnStats compute_column_stats(const DataMatrix& x) {
    const Index m = x.rows(), n = x.cols();
    ColumnStats s;
    s.source = StatsSource::full_matrix;
    s.mean.assign(n, 0.0);
    s.std.assign(n, 0.0);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) s.mean[j] += x(i, j);
    for (Index j = 0; j < n; ++j) s.mean[j] /= static_cast<double>(m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) {
            const double d = x(i, j) - s.mean[j];
            s.std[j] += d * d;
        }
    for (Index j = 0; j < n; ++j) s.std[j] = std::sqrt(s.std[j] / static_cast<double>(m));
    return s;
}

/// Column-wise stats over a row subset, e.g. the training rows T+ u T-.
/// Defaults to the sample formula (divisor k-1) for the variance.
inline ColumnStats compute_column_stats(const DataMatrix& x, const IndexSet& rows,
                                        StdEstimator estimator = StdEstimator::sample) {
    if (rows.empty()) throw std::invalid_argument("empty stats sample");
    const Index n = x.cols();
    const double k = static_cast<double>(rows.size());
    double divisor = k;
    switch (estimator) {
        case StdEstimator::population: divisor = k; break;
        case StdEstimator::sample: divisor = k - 1.0; break;
        case StdEstimator::sample_n15: divisor = k - 1.5; break;
    }
    ColumnStats s;
    s.source = StatsSource::training_only;
    s.mean.assign(n, 0.0);
    s.std.assign(n, 0.0);
    for (Index i : rows)
        for (Index j = 0; j < n; ++j) s.mean[j] += x(i, j);
    for (Index j = 0; j < n; ++j) s.mean[j] /= k;
    for (Index i : rows)
        for (Index j = 0; j < n; ++j) {
            const double d = x(i, j) - s.mean[j];
            s.std[j] += d * d;
        }
    for (Index j = 0; j < n; ++j)
        s.std[j] = divisor > 0.0 ? std::sqrt(s.std[j] / divisor) : 0.0;
    return s;
}

/// Round to `digits` significant decimal digits, half away from zero.
inline double round_significant(double v, int digits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    const int e = static_cast<int>(std::floor(std::log10(std::fabs(v))));
    const double f = std::pow(10.0, digits - 1 - e);
    return std::round(v * f) / f;
}

/// Matrix after column-wise standardization: entry (i,j) measures how many
/// standard deviations x_{i,j} lies from its column mean. Constant columns
/// (std = 0) map to exactly zero.
struct ScaledMatrix {
    DataMatrix values;
    ColumnStats stats;
    std::optional<int> quantize_digits;

    Index rows() const { return values.rows(); }
    Index cols() const { return values.cols(); }
    double operator()(Index i, Index j) const { return values(i, j); }
};

inline ScaledMatrix scale(const DataMatrix& x, const ColumnStats& stats,
                          std::optional<int> quantize_digits = std::nullopt) {
    if (stats.mean.size() != x.cols() || stats.std.size() != x.cols())
        throw std::invalid_argument("stats must have one entry per column");
    ScaledMatrix out{DataMatrix(x.rows(), x.cols()), stats, quantize_digits};
    out.values.column_names = x.column_names;
    for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) {
            const double sigma = stats.std[j];
            double v = sigma != 0.0 ? (x(i, j) - stats.mean[j]) / sigma : 0.0;
            if (quantize_digits) v = round_significant(v, *quantize_digits);
            out.values(i, j) = v;
        }
    }
    return out;
}

/// Scale with stats computed from the matrix itself (population formula).
inline ScaledMatrix scale(const DataMatrix& x,
                          std::optional<int> quantize_digits = std::nullopt) {
    return scale(x, compute_column_stats(x), quantize_digits);
}

}  // namespace hdc
