#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdc/cic.hpp"
#include "hdc/cutoff.hpp"
#include "hdc/indicator.hpp"
#include "hdc/matrix.hpp"
#include "hdc/metrics.hpp"
#include "hdc/scaling.hpp"

namespace hdc {

/// Training-set size given either as an absolute count or as a fraction of
/// the class population. Fractions resolve to floor(f * population) with a
/// minimum of 1.
struct SampleSize {
    static SampleSize count(std::size_t n) { return SampleSize{false, 0.0, n}; }
    static SampleSize fraction(double f) {
        if (!(f > 0.0) || f > 1.0)
            throw std::invalid_argument("fraction must be in (0, 1]");
        return SampleSize{true, f, 0};
    }

    std::size_t resolve(std::size_t population) const {
        if (is_fraction) {
            const auto k = static_cast<std::size_t>(
                std::floor(frac * static_cast<double>(population)));
            return std::max<std::size_t>(1, k);
        }
        return n;
    }

    bool is_fraction = false;
    double frac = 0.0;
    std::size_t n = 0;
};

enum class CicMode { thresholds, auto_rank, manual };

enum class StatsMode {
    full_matrix,      // population stats over all rows (the default pipeline order)
    training,         // sample stats (k-1) over the training rows only
    training_n15,     // k-1.5 variant for low-bias sigma under normality
};

/// Everything that determines a classification run. Runs are reproducible:
/// the same config on the same data yields identical output.
struct RunConfig {
    CicMode cic_mode = CicMode::thresholds;
    double b_pos = 0.3;
    double b_neg = 0.01;
    std::optional<std::size_t> auto_t;      // auto_rank mode; default ceil(0.1 n)
    std::vector<Index> manual_cols;         // manual mode
    std::optional<CicList> explicit_cics;   // imported boundaries, bypasses selection

    std::size_t nb = 1000;
    SampleSize t_pos = SampleSize::fraction(0.2);
    SampleSize t_neg = SampleSize::fraction(0.05);
    std::optional<SampleSize> u_pos;        // union variant only

    Measure measure = Measure::kappa;
    CutoffSelection cutoff = CutoffSelection::optimize;
    std::optional<std::size_t> batch_size;

    StatsMode stats_mode = StatsMode::full_matrix;
    std::optional<int> quantize_digits;
    std::uint64_t seed = 1;
};

/// Result of one classification run over the non-training domain.
struct PredictionReport {
    RunConfig config;
    TrainingSplit split;
    CicList cics;
    IndexSet domain;             // ascending object indices that were classified
    std::vector<double> scores;  // indicator value per domain object
    Bits truth;                  // true labels restricted to the domain
    CutoffResult cutoff;
    ConfusionStats stats;
    std::optional<BatchReport> batch;
    double elapsed_seconds = 0.0;
};

namespace detail {

/// First k elements of a seeded partial shuffle, returned sorted ascending.
inline IndexSet sample_without_replacement(IndexSet pool, std::size_t k,
                                           std::mt19937_64& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace detail

/// Draw T+ and T- (and optionally U+, disjoint from T+) uniformly without
/// replacement from the label classes. Fully determined by the seed.
inline TrainingSplit split_training(const LabelVector& labels, SampleSize t_pos,
                                    SampleSize t_neg,
                                    std::optional<SampleSize> u_pos = std::nullopt,
                                    std::uint64_t seed = 1) {
    const IndexSet pos = labels.positives();
    const IndexSet neg = labels.negatives();
    if (pos.empty() || neg.empty())
        throw std::invalid_argument("labels must contain both classes");

    const std::size_t want_pos = t_pos.resolve(pos.size());
    const std::size_t want_neg = t_neg.resolve(neg.size());
    const std::size_t want_u = u_pos ? u_pos->resolve(pos.size()) : 0;
    if (want_pos + want_u > pos.size() || want_neg > neg.size())
        throw std::invalid_argument(
            "infeasible training sizes: requested " + std::to_string(want_pos) +
            (want_u ? "+" + std::to_string(want_u) : std::string{}) + " of " +
            std::to_string(pos.size()) + " positives, " + std::to_string(want_neg) +
            " of " + std::to_string(neg.size()) + " negatives");

    std::mt19937_64 rng(seed);
    TrainingSplit split;
    split.labels = labels;
    if (want_u > 0) {
        IndexSet both = detail::sample_without_replacement(pos, want_pos + want_u, rng);
        // one draw decides both sets; a fresh shuffle assigns membership
        IndexSet shuffled = both;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        split.t_pos.assign(shuffled.begin(), shuffled.begin() + want_pos);
        split.u_pos.assign(shuffled.begin() + want_pos, shuffled.end());
        std::sort(split.t_pos.begin(), split.t_pos.end());
        std::sort(split.u_pos.begin(), split.u_pos.end());
    } else {
        split.t_pos = detail::sample_without_replacement(pos, want_pos, rng);
    }
    split.t_neg = detail::sample_without_replacement(neg, want_neg, rng);
    split.validate();
    return split;
}

/// Scale the matrix the way a run with this config would: full-matrix
/// population stats by default, training-only sample stats on request.
inline ScaledMatrix scale_for_run(const DataMatrix& x, const TrainingSplit& split,
                                  const RunConfig& cfg) {
    switch (cfg.stats_mode) {
        case StatsMode::full_matrix:
            return scale(x, compute_column_stats(x), cfg.quantize_digits);
        case StatsMode::training: {
            IndexSet rows = split.t_pos;
            rows.insert(rows.end(), split.t_neg.begin(), split.t_neg.end());
            std::sort(rows.begin(), rows.end());
            return scale(x, compute_column_stats(x, rows, StdEstimator::sample),
                         cfg.quantize_digits);
        }
        case StatsMode::training_n15: {
            IndexSet rows = split.t_pos;
            rows.insert(rows.end(), split.t_neg.begin(), split.t_neg.end());
            std::sort(rows.begin(), rows.end());
            return scale(x, compute_column_stats(x, rows, StdEstimator::sample_n15),
                         cfg.quantize_digits);
        }
    }
    throw std::logic_error("unreachable");
}

namespace detail {

inline CicList select_cics(const ScaledMatrix& s, const TrainingSplit& split,
                           const RunConfig& cfg) {
    if (cfg.explicit_cics) return *cfg.explicit_cics;
    switch (cfg.cic_mode) {
        case CicMode::thresholds:
            return find_cics(s, split, cfg.b_pos, cfg.b_neg, cfg.nb);
        case CicMode::auto_rank:
            return auto_cics(s, split, cfg.nb, cfg.auto_t);
        case CicMode::manual:
            return manual_cics(s, split, cfg.nb, cfg.manual_cols);
    }
    throw std::logic_error("unreachable");
}

inline Bits restrict_labels(const LabelVector& labels, const IndexSet& domain) {
    Bits out;
    out.reserve(domain.size());
    for (Index i : domain) out.push_back(labels.bits[i]);
    return out;
}

inline CutoffResult run_cutoff(const IndicatorScores& scores, const Bits& truth,
                               const RunConfig& cfg) {
    if (cfg.cutoff == CutoffSelection::optimize)
        return optimize_cutoff(scores, truth, cfg.measure);
    CutoffResult r;
    r.c_opt = naive_cutoff(scores, truth, cfg.cutoff);
    r.predictions = predict(scores, r.c_opt);
    SweepPoint p;
    p.cutoff = r.c_opt;
    p.accuracy = accuracy(truth, r.predictions);
    p.kappa = kappa(truth, r.predictions);
    r.sweep.push_back(p);
    r.q_opt = p.q(cfg.measure);
    return r;
}

}  // namespace detail

/// The full pipeline: scale, draw training sets, select Cics, score the
/// remaining objects, pick a cutoff and evaluate the predictions against
/// the true labels.
inline PredictionReport classify(const DataMatrix& x, const LabelVector& labels,
                                 const RunConfig& cfg) {
    if (labels.size() != x.rows())
        throw std::invalid_argument("label vector length must equal matrix rows");
    const auto start = std::chrono::steady_clock::now();

    PredictionReport report;
    report.config = cfg;
    report.split = split_training(labels, cfg.t_pos, cfg.t_neg, std::nullopt, cfg.seed);

    const ScaledMatrix scaled = scale_for_run(x, report.split, cfg);
    report.cics = detail::select_cics(scaled, report.split, cfg);
    if (report.cics.empty()) throw std::runtime_error("no candidate indicator columns");

    report.domain = report.split.non_training();
    if (report.domain.empty()) throw std::runtime_error("nothing to classify");

    const IndicatorScores scores = indicator_scores(scaled, report.cics, report.domain);
    report.scores.assign(scores.values.begin(), scores.values.end());
    report.truth = detail::restrict_labels(labels, report.domain);

    report.cutoff = detail::run_cutoff(scores, report.truth, cfg);
    report.stats = confusion(report.truth, report.cutoff.predictions);
    if (cfg.batch_size)
        report.batch = batchwise_optimize(scores, report.truth, *cfg.batch_size, cfg.measure);

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace hdc
