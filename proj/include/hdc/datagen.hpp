#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdc/matrix.hpp"

namespace hdc {

/// A column carrying planted signal: positive objects take one of a few
/// discrete levels around `shift` (in noise-sigma units) while negatives
/// follow the background noise. `spread` is the fraction of positives
/// scattered onto the off-peak levels; 0 makes the column perfectly
/// separable.
struct PlantedColumn {
    Index col = 0;
    double shift = 6.0;
    double spread = 0.1;
};

enum class NoiseKind { gaussian, laplace };

struct GeneratorSpec {
    Index m = 10000;
    Index n = 50;
    double positive_rate = 0.05;
    std::vector<PlantedColumn> planted;
    NoiseKind noise = NoiseKind::gaussian;
    Index discrete_cols = 0;  // integer-valued noise columns, taken from the end
    std::uint64_t seed = 1;
};

struct GeneratedLot {
    DataMatrix matrix;
    LabelVector labels;
    IndexSet planted_cols;  // ground truth, ascending
};

namespace detail {

// off-peak levels sit this many sigma apart so each gets its own bin
inline constexpr double kPlantedLevelStep = 0.05;

inline double draw_noise(std::mt19937_64& rng, NoiseKind kind) {
    if (kind == NoiseKind::gaussian) {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(rng);
    }
    // two-sided exponential via inverse CDF
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double v = u(rng) - 0.5;
    const double mag = -std::log(1.0 - 2.0 * std::fabs(v));
    return v < 0.0 ? -mag : mag;
}

}  // namespace detail

/// Synthetic lot with known indicator columns. Deterministic per seed:
/// labels are drawn first, then columns in index order.
inline GeneratedLot generate(const GeneratorSpec& spec) {
    if (spec.m < 1 || spec.n < 1) throw std::invalid_argument("empty lot dimensions");
    if (!(spec.positive_rate > 0.0) || !(spec.positive_rate < 1.0))
        throw std::invalid_argument("positive rate must be in (0, 1)");

    std::vector<int> planted_at(spec.n, -1);
    IndexSet planted_cols;
    for (std::size_t p = 0; p < spec.planted.size(); ++p) {
        const Index j = spec.planted[p].col;
        if (j >= spec.n) throw std::invalid_argument("planted column out of range");
        if (planted_at[j] != -1) throw std::invalid_argument("duplicate planted column");
        planted_at[j] = static_cast<int>(p);
        planted_cols.push_back(j);
    }
    std::sort(planted_cols.begin(), planted_cols.end());

    std::vector<std::uint8_t> discrete(spec.n, 0);
    Index remaining = spec.discrete_cols;
    for (Index j = spec.n; j-- > 0 && remaining > 0;) {
        if (planted_at[j] == -1) {
            discrete[j] = 1;
            --remaining;
        }
    }
    if (remaining > 0)
        throw std::invalid_argument("not enough non-planted columns for discrete count");

    std::mt19937_64 rng(spec.seed);
    GeneratedLot lot{DataMatrix(spec.m, spec.n), LabelVector{}, planted_cols};

    std::bernoulli_distribution is_positive(spec.positive_rate);
    lot.labels.bits.resize(spec.m);
    for (Index i = 0; i < spec.m; ++i) lot.labels.bits[i] = is_positive(rng) ? 1 : 0;

    std::uniform_int_distribution<int> small_int(0, 9);
    std::uniform_int_distribution<int> off_peak(0, 7);  // maps to {-4..-1, 1..4}
    lot.matrix.column_names.reserve(spec.n);
    for (Index j = 0; j < spec.n; ++j)
        lot.matrix.column_names.push_back("f" + std::to_string(j + 1));

    for (Index j = 0; j < spec.n; ++j) {
        if (planted_at[j] != -1) {
            const PlantedColumn& pc = spec.planted[static_cast<std::size_t>(planted_at[j])];
            std::bernoulli_distribution scatter(pc.spread);
            for (Index i = 0; i < spec.m; ++i) {
                if (lot.labels.positive(i)) {
                    int level = 0;
                    if (pc.spread > 0.0 && scatter(rng)) {
                        const int r = off_peak(rng);
                        level = r < 4 ? r - 4 : r - 3;  // skip 0
                    }
                    lot.matrix(i, j) = pc.shift + detail::kPlantedLevelStep * level;
                } else {
                    lot.matrix(i, j) = detail::draw_noise(rng, spec.noise);
                }
            }
        } else if (discrete[j]) {
            for (Index i = 0; i < spec.m; ++i)
                lot.matrix(i, j) = static_cast<double>(small_int(rng));
        } else {
            for (Index i = 0; i < spec.m; ++i)
                lot.matrix(i, j) = detail::draw_noise(rng, spec.noise);
        }
    }
    return lot;
}

}  // namespace hdc
