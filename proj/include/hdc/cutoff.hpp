#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hdc/indicator.hpp"
#include "hdc/metrics.hpp"

namespace hdc {

/// Similarity measure Q(v, w) optimized by the cutoff sweep.
enum class Measure { accuracy, kappa };

/// How the cutoff is selected for a classification run.
enum class CutoffSelection {
    optimize,        // exhaustive sweep, argmax of the chosen measure
    naive,           // c = (Av1 - Av0) / 2
    naive_midpoint,  // c = (Av1 + Av0) / 2
};

/// One scanned cutoff with both quality measures, for the cutoff-vs-quality
/// plot data.
struct SweepPoint {
    double cutoff = 0.0;
    double accuracy = 0.0;
    double kappa = 0.0;

    double q(Measure m) const { return m == Measure::kappa ? kappa : accuracy; }
};

struct CutoffResult {
    double c_opt = 0.0;
    double q_opt = 0.0;
    std::vector<SweepPoint> sweep;
    Bits predictions;  // F(c_opt) over the evaluation domain, ascending object order
};

/// F(i, c): 1 iff score(i) >= c, in the domain's order.
inline Bits predict(const std::vector<double>& scores, double c) {
    Bits out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        out[i] = scores[i] >= c ? 1 : 0;
    return out;
}

inline Bits predict(const IndicatorScores& scores, double c) {
    Bits out(scores.values.size());
    for (std::size_t i = 0; i < scores.values.size(); ++i)
        out[i] = static_cast<double>(scores.values[i]) >= c ? 1 : 0;
    return out;
}

/// Naive cutoff from the class-wise mean scores Av1 (true positives) and
/// Av0 (true negatives). The verbatim rule is half their gap; the midpoint
/// variant is provided as an alternative interpretation.
inline double naive_cutoff(const std::vector<double>& scores, const Bits& truth,
                           CutoffSelection mode = CutoffSelection::naive) {
    if (scores.size() != truth.size())
        throw std::invalid_argument("scores/truth length mismatch");
    double sum_pos = 0.0, sum_neg = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (truth[i]) {
            sum_pos += scores[i];
            ++n_pos;
        } else {
            sum_neg += scores[i];
            ++n_neg;
        }
    }
    if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("empty class in domain");
    const double av1 = sum_pos / static_cast<double>(n_pos);
    const double av0 = sum_neg / static_cast<double>(n_neg);
    return mode == CutoffSelection::naive_midpoint ? (av1 + av0) / 2.0 : (av1 - av0) / 2.0;
}

inline double naive_cutoff(const IndicatorScores& scores, const Bits& truth,
                           CutoffSelection mode = CutoffSelection::naive) {
    return naive_cutoff(std::vector<double>(scores.values.begin(), scores.values.end()),
                        truth, mode);
}

/// Evaluate Q(F(c), v) for every cutoff in the grid and keep the argmax
/// (smallest cutoff on ties).
inline CutoffResult optimize_cutoff_grid(const std::vector<double>& scores, const Bits& truth,
                                         const std::vector<double>& grid, Measure measure) {
    if (scores.size() != truth.size())
        throw std::invalid_argument("scores/truth length mismatch");
    if (scores.empty()) throw std::invalid_argument("empty domain");
    if (grid.empty()) throw std::invalid_argument("empty cutoff grid");

    CutoffResult result;
    result.sweep.reserve(grid.size());
    std::size_t best = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const Bits f = predict(scores, grid[g]);
        SweepPoint p;
        p.cutoff = grid[g];
        p.accuracy = accuracy(truth, f);
        p.kappa = kappa(truth, f);
        result.sweep.push_back(p);
        if (p.q(measure) > result.sweep[best].q(measure)) best = g;
    }
    result.c_opt = result.sweep[best].cutoff;
    result.q_opt = result.sweep[best].q(measure);
    result.predictions = predict(scores, result.c_opt);
    return result;
}

/// Sweep every integer cutoff from min(S_C) to max(S_C) inclusive.
inline CutoffResult optimize_cutoff(const IndicatorScores& scores, const Bits& truth,
                                    Measure measure) {
    if (scores.values.empty()) throw std::invalid_argument("empty domain");
    const int lo = scores.min_value();
    const int hi = scores.max_value();
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(hi - lo) + 1);
    for (int c = lo; c <= hi; ++c) grid.push_back(static_cast<double>(c));
    return optimize_cutoff_grid(
        std::vector<double>(scores.values.begin(), scores.values.end()), truth, grid, measure);
}

/// Cutoff optimization repeated over consecutive fixed-size slices of the
/// domain, plus the kappa spread summary used to judge lot homogeneity.
struct BatchResult {
    std::size_t begin = 0;  // position range within the domain order
    std::size_t end = 0;
    double c_opt = 0.0;
    double accuracy = 0.0;
    double kappa = 0.0;
};

struct BatchReport {
    std::size_t batch_size = 0;
    std::vector<BatchResult> batches;
    double min_kappa = 0.0;
    double max_kappa = 0.0;
    // census over kappa: exactly 1.0, [0.9,1), [0.8,0.9), [0.7,0.8), below 0.7
    std::size_t n_kappa_one = 0;
    std::size_t n_kappa_090 = 0;
    std::size_t n_kappa_080 = 0;
    std::size_t n_kappa_070 = 0;
    std::size_t n_kappa_below = 0;
};

inline BatchReport batchwise_optimize(const IndicatorScores& scores, const Bits& truth,
                                      std::size_t batch_size, Measure measure) {
    if (batch_size == 0) throw std::invalid_argument("batch size must be at least 1");
    if (scores.values.empty()) throw std::invalid_argument("empty domain");
    if (scores.values.size() != truth.size())
        throw std::invalid_argument("scores/truth length mismatch");

    BatchReport report;
    report.batch_size = batch_size;
    for (std::size_t begin = 0; begin < scores.values.size(); begin += batch_size) {
        const std::size_t end = std::min(begin + batch_size, scores.values.size());
        IndicatorScores part;
        part.objects.assign(scores.objects.begin() + begin, scores.objects.begin() + end);
        part.values.assign(scores.values.begin() + begin, scores.values.begin() + end);
        const Bits part_truth(truth.begin() + begin, truth.begin() + end);
        const CutoffResult r = optimize_cutoff(part, part_truth, measure);
        const ConfusionStats cs = confusion(part_truth, r.predictions);
        report.batches.push_back(BatchResult{begin, end, r.c_opt, cs.accuracy, cs.kappa});
    }

    report.min_kappa = report.batches.front().kappa;
    report.max_kappa = report.batches.front().kappa;
    for (const BatchResult& b : report.batches) {
        report.min_kappa = std::min(report.min_kappa, b.kappa);
        report.max_kappa = std::max(report.max_kappa, b.kappa);
        if (b.kappa == 1.0)
            ++report.n_kappa_one;
        else if (b.kappa >= 0.9)
            ++report.n_kappa_090;
        else if (b.kappa >= 0.8)
            ++report.n_kappa_080;
        else if (b.kappa >= 0.7)
            ++report.n_kappa_070;
        else
            ++report.n_kappa_below;
    }
    return report;
}

}  // namespace hdc
