#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hdc/classifier.hpp"
#include "hdc/indicator.hpp"

namespace hdc {

/// Similarity of each object's activity pattern against a reference set of
/// positive patterns: q is the inner product normalized by the object's own
/// pattern weight, maximized/minimized over the reference set.
struct PatternSimilarity {
    IndexSet objects;
    std::vector<double> q_max;
    std::vector<double> q_min;
};

/// Which of the two pattern-similarity indicators drives predictions.
enum class UnionIndicator { q_max, q_min };

/// q_max/q_min per non-reference object. `patterns` must cover the domain
/// and every member of u_pos. Objects whose pattern weight is zero score 0:
/// they activate no Cic at all.
inline PatternSimilarity pattern_similarity(const ActivityPatterns& patterns,
                                            const IndexSet& u_pos) {
    if (u_pos.empty()) throw std::invalid_argument("empty reference set U+");

    std::vector<std::size_t> ref_rows;
    ref_rows.reserve(u_pos.size());
    for (Index u : u_pos) {
        const auto it = std::lower_bound(patterns.objects.begin(), patterns.objects.end(), u);
        if (it == patterns.objects.end() || *it != u)
            throw std::invalid_argument("pattern missing for a U+ object");
        ref_rows.push_back(static_cast<std::size_t>(it - patterns.objects.begin()));
    }
    IndexSet skip = u_pos;  // membership test must not assume a sorted U+
    std::sort(skip.begin(), skip.end());

    PatternSimilarity sim;
    const std::size_t nc = patterns.cic_count;
    for (std::size_t k = 0; k < patterns.objects.size(); ++k) {
        if (std::binary_search(skip.begin(), skip.end(), patterns.objects[k])) continue;
        sim.objects.push_back(patterns.objects[k]);
        const int weight = patterns.weight(k);
        if (weight == 0) {
            sim.q_max.push_back(0.0);
            sim.q_min.push_back(0.0);
            continue;
        }
        double best = 0.0, worst = 1.0;
        for (std::size_t r : ref_rows) {
            int dot = 0;
            for (std::size_t j = 0; j < nc; ++j)
                dot += patterns.bits[k * nc + j] & patterns.bits[r * nc + j];
            const double q = static_cast<double>(dot) / static_cast<double>(weight);
            best = std::max(best, q);
            worst = std::min(worst, q);
        }
        sim.q_max.push_back(best);
        sim.q_min.push_back(worst);
    }
    return sim;
}

/// 101 equispaced cutoffs {0, 0.01, ..., 1}.
inline std::vector<double> default_unit_grid() {
    std::vector<double> grid;
    grid.reserve(101);
    for (int i = 0; i <= 100; ++i) grid.push_back(static_cast<double>(i) / 100.0);
    return grid;
}

/// Classification with pattern similarity against a third positive training
/// set U+ as the indicator instead of the Cic count. The cutoff is optimized
/// over a grid in [0, 1].
inline PredictionReport union_classify(const DataMatrix& x, const LabelVector& labels,
                                       const RunConfig& cfg,
                                       UnionIndicator indicator = UnionIndicator::q_max,
                                       std::vector<double> grid = {}) {
    if (!cfg.u_pos) throw std::invalid_argument("union classification requires a U+ size");
    if (labels.size() != x.rows())
        throw std::invalid_argument("label vector length must equal matrix rows");
    if (grid.empty()) grid = default_unit_grid();
    const auto start = std::chrono::steady_clock::now();

    PredictionReport report;
    report.config = cfg;
    report.split = split_training(labels, cfg.t_pos, cfg.t_neg, cfg.u_pos, cfg.seed);

    const ScaledMatrix scaled = scale_for_run(x, report.split, cfg);
    report.cics = detail::select_cics(scaled, report.split, cfg);
    if (report.cics.empty()) throw std::runtime_error("no candidate indicator columns");

    report.domain = report.split.non_training_non_u();
    if (report.domain.empty()) throw std::runtime_error("nothing to classify");

    IndexSet pattern_domain = report.domain;
    pattern_domain.insert(pattern_domain.end(), report.split.u_pos.begin(),
                          report.split.u_pos.end());
    std::sort(pattern_domain.begin(), pattern_domain.end());
    const ActivityPatterns patterns = activity_patterns(scaled, report.cics, pattern_domain);
    const PatternSimilarity sim = pattern_similarity(patterns, report.split.u_pos);

    report.scores = indicator == UnionIndicator::q_max ? sim.q_max : sim.q_min;
    report.truth = detail::restrict_labels(labels, report.domain);

    if (cfg.cutoff == CutoffSelection::optimize) {
        report.cutoff = optimize_cutoff_grid(report.scores, report.truth, grid, cfg.measure);
    } else {
        report.cutoff.c_opt = naive_cutoff(report.scores, report.truth, cfg.cutoff);
        report.cutoff.predictions = predict(report.scores, report.cutoff.c_opt);
        SweepPoint p;
        p.cutoff = report.cutoff.c_opt;
        p.accuracy = accuracy(report.truth, report.cutoff.predictions);
        p.kappa = kappa(report.truth, report.cutoff.predictions);
        report.cutoff.sweep.push_back(p);
        report.cutoff.q_opt = p.q(cfg.measure);
    }
    report.stats = confusion(report.truth, report.cutoff.predictions);

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace hdc
