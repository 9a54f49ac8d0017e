#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hdc/cic.hpp"
#include "hdc/matrix.hpp"
#include "hdc/scaling.hpp"

namespace hdc {

/// Indicator value per domain object: the number of Cics whose peak bin
/// contains the object's value in that column. Objects are kept in the
/// domain's (ascending) order.
struct IndicatorScores {
    IndexSet objects;
    std::vector<int> values;

    std::size_t size() const { return objects.size(); }

    int min_value() const {
        if (values.empty()) throw std::invalid_argument("empty score set");
        return *std::min_element(values.begin(), values.end());
    }
    int max_value() const {
        if (values.empty()) throw std::invalid_argument("empty score set");
        return *std::max_element(values.begin(), values.end());
    }
};

/// Per-object activity bit pattern over the Cic list, row-major.
/// Hamming weight of row k equals the indicator score of objects[k].
struct ActivityPatterns {
    IndexSet objects;
    std::size_t cic_count = 0;
    std::vector<std::uint8_t> bits;  // objects.size() x cic_count

    bool active(std::size_t row, std::size_t cic) const {
        return bits[row * cic_count + cic] != 0;
    }

    int weight(std::size_t row) const {
        int w = 0;
        for (std::size_t j = 0; j < cic_count; ++j)
            w += bits[row * cic_count + j];
        return w;
    }
};

namespace detail {

inline void check_cic_range(const ScaledMatrix& s, const CicList& cics) {
    for (const Cic& c : cics)
        if (c.col >= s.cols())
            throw std::invalid_argument("cic column out of matrix range");
}

}  // namespace detail

/// Scores S_C(i) over the given domain. The caller is responsible for the
/// domain being disjoint from the training sets.
inline IndicatorScores indicator_scores(const ScaledMatrix& s, const CicList& cics,
                                        const IndexSet& domain) {
    detail::check_cic_range(s, cics);
    IndicatorScores out;
    out.objects = domain;
    out.values.reserve(domain.size());
    for (Index i : domain) {
        int score = 0;
        for (const Cic& c : cics) {
            const double v = s(i, c.col);
            if (v >= c.lo && v < c.hi) ++score;
        }
        out.values.push_back(score);
    }
    return out;
}

/// Activity bit patterns A_C(i) over the given domain.
inline ActivityPatterns activity_patterns(const ScaledMatrix& s, const CicList& cics,
                                          const IndexSet& domain) {
    detail::check_cic_range(s, cics);
    ActivityPatterns out;
    out.objects = domain;
    out.cic_count = cics.size();
    out.bits.assign(domain.size() * cics.size(), 0);
    for (std::size_t k = 0; k < domain.size(); ++k) {
        const Index i = domain[k];
        for (std::size_t j = 0; j < cics.size(); ++j) {
            const double v = s(i, cics[j].col);
            out.bits[k * cics.size() + j] = (v >= cics[j].lo && v < cics[j].hi) ? 1 : 0;
        }
    }
    return out;
}

}  // namespace hdc
