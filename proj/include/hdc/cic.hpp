#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hdc/histogram.hpp"
#include "hdc/matrix.hpp"
#include "hdc/scaling.hpp"

namespace hdc {

/// Index sets of the positive/negative training samples (and, for the
/// union variant, a third positive set U+), all disjoint. Sets are kept
/// sorted ascending.
struct TrainingSplit {
    IndexSet t_pos;
    IndexSet t_neg;
    IndexSet u_pos;  // empty unless the union variant is used
    LabelVector labels;

    /// Objects outside T+ u T-, ascending: the classification domain.
    IndexSet non_training() const {
        return complement_of(t_pos, t_neg, {});
    }

    /// Objects outside T+ u T- u U+, ascending.
    IndexSet non_training_non_u() const {
        return complement_of(t_pos, t_neg, u_pos);
    }

    void validate() const {
        if (t_pos.empty() || t_neg.empty())
            throw std::invalid_argument("empty training split");
        std::vector<std::uint8_t> seen(labels.size(), 0);
        auto mark = [&](const IndexSet& set, bool want_positive) {
            for (Index i : set) {
                if (i >= labels.size())
                    throw std::invalid_argument("training index out of range");
                if (labels.positive(i) != want_positive)
                    throw std::invalid_argument("training index has wrong label");
                if (seen[i]++)
                    throw std::invalid_argument("training sets must be disjoint");
            }
        };
        mark(t_pos, true);
        mark(t_neg, false);
        mark(u_pos, true);
    }

private:
    IndexSet complement_of(const IndexSet& a, const IndexSet& b, const IndexSet& c) const {
        std::vector<std::uint8_t> in_training(labels.size(), 0);
        for (Index i : a) in_training[i] = 1;
        for (Index i : b) in_training[i] = 1;
        for (Index i : c) in_training[i] = 1;
        IndexSet out;
        for (Index i = 0; i < labels.size(); ++i)
            if (!in_training[i]) out.push_back(i);
        return out;
    }
};

/// Candidate indicator column: a feature together with the boundaries
/// [lo, hi) of the most-frequent bin of its positive-training histogram.
struct Cic {
    Index col;
    double lo;
    double hi;
};

using CicList = std::vector<Cic>;

/// One row of the n_diff relevance ranking.
struct RelevanceRow {
    Index col;
    std::size_t n_pos;  // positive training objects in the peak bin
    std::size_t n_neg;  // negative training objects in the same bin
    long long n_diff;   // n_pos - n_neg
};

using RelevanceTable = std::vector<RelevanceRow>;

namespace detail {

/// Peak bin of column j's positive-training histogram: boundaries from the
/// positive values, then the leftmost bin of maximal relative frequency.
inline Cic positive_peak_bin(const ScaledMatrix& s, const IndexSet& t_pos,
                             std::size_t nb, Index j) {
    const std::vector<double> x_pos = s.values.column(j, t_pos);
    const BinBoundaries b = equal_width_boundaries(x_pos, nb);
    const Histogram h = histogram(x_pos, b);
    const std::size_t k_peak = static_cast<std::size_t>(
        std::max_element(h.freqs.begin(), h.freqs.end()) - h.freqs.begin());
    // outer bins are empty under these boundaries, so 1 <= k_peak <= nb-2
    return Cic{j, b.inner[k_peak - 1], b.inner[k_peak]};
}

inline double peak_freq(const ScaledMatrix& s, const IndexSet& rows, const Cic& c) {
    std::size_t hits = 0;
    for (Index i : rows) {
        const double v = s(i, c.col);
        if (v >= c.lo && v < c.hi) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(rows.size());
}

inline std::size_t peak_count(const ScaledMatrix& s, const IndexSet& rows, const Cic& c) {
    std::size_t hits = 0;
    for (Index i : rows) {
        const double v = s(i, c.col);
        if (v >= c.lo && v < c.hi) ++hits;
    }
    return hits;
}

}  // namespace detail

/// All columns whose positive-training peak frequency exceeds b_pos while
/// the negative-training frequency of the same bin stays below b_neg.
/// Output is in ascending column order.
inline CicList find_cics(const ScaledMatrix& s, const TrainingSplit& split,
                         double b_pos, double b_neg, std::size_t nb) {
    if (split.t_pos.empty() || split.t_neg.empty())
        throw std::invalid_argument("empty training split");
    CicList out;
    for (Index j = 0; j < s.cols(); ++j) {
        const Cic c = detail::positive_peak_bin(s, split.t_pos, nb, j);
        const double h_pos = detail::peak_freq(s, split.t_pos, c);
        const double h_neg = detail::peak_freq(s, split.t_neg, c);
        if (h_pos > b_pos && h_neg < b_neg) out.push_back(c);
    }
    return out;
}

/// Per-column counts of positive/negative training objects inside the
/// positive peak bin, ranked by n_diff descending (ties by column index).
inline RelevanceTable relevance_table(const ScaledMatrix& s, const TrainingSplit& split,
                                      std::size_t nb) {
    if (split.t_pos.empty() || split.t_neg.empty())
        throw std::invalid_argument("empty training split");
    RelevanceTable table;
    table.reserve(s.cols());
    for (Index j = 0; j < s.cols(); ++j) {
        const Cic c = detail::positive_peak_bin(s, split.t_pos, nb, j);
        const std::size_t n_pos = detail::peak_count(s, split.t_pos, c);
        const std::size_t n_neg = detail::peak_count(s, split.t_neg, c);
        table.push_back(RelevanceRow{
            j, n_pos, n_neg,
            static_cast<long long>(n_pos) - static_cast<long long>(n_neg)});
    }
    std::sort(table.begin(), table.end(), [](const RelevanceRow& a, const RelevanceRow& b) {
        if (a.n_diff != b.n_diff) return a.n_diff > b.n_diff;
        return a.col < b.col;
    });
    return table;
}

/// Default t for auto_cics: the top 10% of the ranking, rounded up.
inline std::size_t default_auto_cic_count(std::size_t n_cols) {
    return static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n_cols)));
}

/// The t columns with the highest n_diff values, as Cic triples in rank
/// order. When t is not given, t* = ceil(0.1 * n).
inline CicList auto_cics(const ScaledMatrix& s, const TrainingSplit& split, std::size_t nb,
                         std::optional<std::size_t> t = std::nullopt) {
    const std::size_t want = t.value_or(default_auto_cic_count(s.cols()));
    if (want < 1 || want > s.cols())
        throw std::invalid_argument("cic count out of range");
    const RelevanceTable table = relevance_table(s, split, nb);
    CicList out;
    out.reserve(want);
    for (std::size_t r = 0; r < want; ++r)
        out.push_back(detail::positive_peak_bin(s, split.t_pos, nb, table[r].col));
    return out;
}

/// Cic triples for explicitly chosen columns, bypassing the b+/b- tests.
inline CicList manual_cics(const ScaledMatrix& s, const TrainingSplit& split, std::size_t nb,
                           const std::vector<Index>& cols) {
    if (split.t_pos.empty())
        throw std::invalid_argument("empty training split");
    if (cols.empty()) throw std::invalid_argument("no columns given");
    std::vector<std::uint8_t> used(s.cols(), 0);
    CicList out;
    out.reserve(cols.size());
    for (Index j : cols) {
        if (j >= s.cols()) throw std::invalid_argument("column index out of range");
        if (used[j]++) throw std::invalid_argument("duplicate column index");
        out.push_back(detail::positive_peak_bin(s, split.t_pos, nb, j));
    }
    return out;
}

}  // namespace hdc
