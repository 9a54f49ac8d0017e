#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hdc {

using Bits = std::vector<std::uint8_t>;

namespace detail {

inline void check_pair(const Bits& v, const Bits& w) {
    if (v.empty()) throw std::invalid_argument("empty bit vectors");
    if (v.size() != w.size()) throw std::invalid_argument("bit vector length mismatch");
}

}  // namespace detail

/// Fraction of coincident bits of two equal-length 0/1 vectors.
inline double accuracy(const Bits& v, const Bits& w) {
    detail::check_pair(v, w);
    std::size_t match = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == w[i]) ++match;
    return static_cast<double>(match) / static_cast<double>(v.size());
}

struct KappaResult {
    double value = 0.0;
    bool degenerate = false;  // both raters constant and equal: chance agreement is 1
};

/// Cohen's kappa of two binary raters: (accuracy - p_e) / (1 - p_e) with
/// p_e = (n_v0*n_w0 + n_v1*n_w1) / r^2. The 0/0 case (p_e = 1) is defined
/// as 0 and flagged so it cannot silently win a cutoff sweep.
inline KappaResult kappa_checked(const Bits& v, const Bits& w) {
    detail::check_pair(v, w);
    const double r = static_cast<double>(v.size());
    double n_v1 = 0.0, n_w1 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        n_v1 += v[i];
        n_w1 += w[i];
    }
    const double n_v0 = r - n_v1, n_w0 = r - n_w1;
    const double p_e = (n_v0 * n_w0 + n_v1 * n_w1) / (r * r);
    if (p_e == 1.0) return {0.0, true};
    return {(accuracy(v, w) - p_e) / (1.0 - p_e), false};
}

inline double kappa(const Bits& v, const Bits& w) { return kappa_checked(v, w).value; }

/// Confusion counts of a truth/prediction pair plus the derived quality
/// numbers reported for every classification run.
struct ConfusionStats {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double accuracy = 0.0;
    double kappa = 0.0;
    bool kappa_degenerate = false;

    std::size_t total() const { return tp + fp + tn + fn; }

    double tp_rate() const { return ratio(tp, tp + fn); }       // TP/(TP+FN)
    double tn_rate() const { return ratio(tn, tn + fp); }       // TN/(TN+FP)
    double fp_over_pos() const { return ratio(fp, tp + fn); }   // FP/(TP+FN)
    double fn_over_neg() const { return ratio(fn, tn + fp); }   // FN/(TN+FP)
    double tp_fp_ratio() const { return ratio(tp, fp); }
    double tn_fn_ratio() const { return ratio(tn, fn); }

private:
    static double ratio(std::size_t num, std::size_t den) {
        if (den == 0)
            return num == 0 ? std::numeric_limits<double>::quiet_NaN()
                            : std::numeric_limits<double>::infinity();
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

inline ConfusionStats confusion(const Bits& truth, const Bits& prediction) {
    detail::check_pair(truth, prediction);
    ConfusionStats s;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i]) {
            prediction[i] ? ++s.tp : ++s.fn;
        } else {
            prediction[i] ? ++s.fp : ++s.tn;
        }
    }
    s.accuracy = static_cast<double>(s.tp + s.tn) / static_cast<double>(truth.size());
    const KappaResult k = kappa_checked(truth, prediction);
    s.kappa = k.value;
    s.kappa_degenerate = k.degenerate;
    return s;
}

}  // namespace hdc
