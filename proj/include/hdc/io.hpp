#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdc/cic.hpp"
#include "hdc/classifier.hpp"
#include "hdc/histogram.hpp"
#include "hdc/matrix.hpp"
#include "hdc/metrics.hpp"

namespace hdc {

/// How raw label-column values map to the 0/1 state. The wafer convention
/// is negation of a pass value ("anything but 0 is a defect"); the inverted
/// mode marks the listed values themselves as positive.
struct LabelRule {
    enum class Kind { negate_pass, match_positive };
    Kind kind = Kind::negate_pass;
    std::set<std::string> values = {"0"};

    bool positive(const std::string& raw) const {
        const bool listed = values.count(raw) > 0;
        return kind == Kind::negate_pass ? !listed : listed;
    }
};

/// A labeled data matrix plus the optional feature-to-MeasStep assignment.
struct Dataset {
    DataMatrix matrix;
    LabelVector labels;
    std::string label_source;
    std::vector<std::string> step_of_column;  // empty, or one entry per column
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

inline double parse_cell(const std::string& cell, std::size_t row1, std::size_t col1) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw std::runtime_error("cannot parse numeric cell '" + cell + "' at row " +
                                 std::to_string(row1) + ", column " + std::to_string(col1));
    return v;
}

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string format_ratio(double v) {
    if (std::isinf(v)) return "inf";
    if (std::isnan(v)) return "nan";
    return format_fixed(v, 1);
}

}  // namespace detail

/// Strict CSV ingestion: header row required, every non-label cell must be
/// a finite number, row order preserved.
inline Dataset load_csv(const std::string& path, const std::string& label_column,
                        const LabelRule& rule = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' is empty");
    const std::vector<std::string> header = detail::split_csv_line(line);

    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == label_column) label_idx = j;
    if (label_idx == header.size())
        throw std::runtime_error("label column '" + label_column + "' not found in '" +
                                 path + "'");

    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != label_idx) names.push_back(header[j]);

    std::vector<std::vector<double>> rows;
    std::vector<std::uint8_t> bits;
    std::size_t row1 = 1;
    while (std::getline(in, line)) {
        ++row1;
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("row " + std::to_string(row1) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        std::vector<double> row;
        row.reserve(header.size() - 1);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == label_idx) {
                bits.push_back(rule.positive(cells[j]) ? 1 : 0);
            } else {
                row.push_back(detail::parse_cell(cells[j], row1, j + 1));
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("'" + path + "' has no data rows");

    Dataset ds;
    ds.matrix = DataMatrix::from_rows(rows);
    ds.matrix.column_names = names;
    ds.labels.bits = std::move(bits);
    ds.label_source = label_column;
    return ds;
}

/// Write a labeled matrix as CSV with full round-trip precision.
inline void write_csv(std::ostream& out, const DataMatrix& x, const LabelVector& labels,
                      const std::string& label_column = "state") {
    for (Index j = 0; j < x.cols(); ++j) {
        out << (x.column_names.empty() ? "f" + std::to_string(j + 1) : x.column_names[j]);
        out << ',';
    }
    out << label_column << '\n';
    for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) out << detail::format_full(x(i, j)) << ',';
        out << (labels.positive(i) ? '1' : '0') << '\n';
    }
}

inline void write_csv(const std::string& path, const DataMatrix& x, const LabelVector& labels,
                      const std::string& label_column = "state") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_csv(out, x, labels, label_column);
}

/// Attach a feature-to-step assignment from a sidecar CSV (column,step).
inline void load_step_map(Dataset& ds, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ds.step_of_column.assign(ds.matrix.cols(), "");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 2)
            throw std::runtime_error("step map rows must be 'column,step'");
        const auto it = std::find(ds.matrix.column_names.begin(),
                                  ds.matrix.column_names.end(), cells[0]);
        if (it == ds.matrix.column_names.end())
            throw std::runtime_error("step map names unknown column '" + cells[0] + "'");
        const auto j = static_cast<std::size_t>(it - ds.matrix.column_names.begin());
        if (!ds.step_of_column[j].empty())
            throw std::runtime_error("column '" + cells[0] + "' assigned to two steps");
        ds.step_of_column[j] = cells[1];
    }
}

namespace detail {

inline Dataset restrict_to(const Dataset& ds, const std::vector<Index>& cols) {
    Dataset out;
    out.labels = ds.labels;
    out.label_source = ds.label_source;
    out.matrix = DataMatrix(ds.matrix.rows(), cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        for (Index i = 0; i < ds.matrix.rows(); ++i)
            out.matrix(i, k) = ds.matrix(i, cols[k]);
        if (!ds.matrix.column_names.empty())
            out.matrix.column_names.push_back(ds.matrix.column_names[cols[k]]);
        if (!ds.step_of_column.empty())
            out.step_of_column.push_back(ds.step_of_column[cols[k]]);
    }
    return out;
}

}  // namespace detail

/// Restrict to the named columns (labels unchanged).
inline Dataset filter_columns(const Dataset& ds, const std::vector<Index>& cols) {
    if (cols.empty()) throw std::invalid_argument("empty column selection");
    std::vector<std::uint8_t> used(ds.matrix.cols(), 0);
    for (Index j : cols) {
        if (j >= ds.matrix.cols()) throw std::invalid_argument("column index out of range");
        if (used[j]++) throw std::invalid_argument("duplicate column in selection");
    }
    return detail::restrict_to(ds, cols);
}

/// Restrict to the columns belonging to the named MeasSteps.
inline Dataset filter_steps(const Dataset& ds, const std::vector<std::string>& steps) {
    if (steps.empty()) throw std::invalid_argument("empty step selection");
    if (ds.step_of_column.empty())
        throw std::invalid_argument("dataset carries no step assignment");
    for (const std::string& s : steps)
        if (std::find(ds.step_of_column.begin(), ds.step_of_column.end(), s) ==
            ds.step_of_column.end())
            throw std::invalid_argument("unknown step '" + s + "'");
    std::vector<Index> cols;
    for (Index j = 0; j < ds.matrix.cols(); ++j)
        if (std::find(steps.begin(), steps.end(), ds.step_of_column[j]) != steps.end())
            cols.push_back(j);
    return detail::restrict_to(ds, cols);
}

/// The quality table printed for every classification run: counts, the four
/// percentage rows, the two ratio rows, accuracy and kappa.
inline std::string format_confusion_table(const ConfusionStats& s) {
    std::ostringstream out;
    out << "TP           " << s.tp << '\n';
    out << "FP           " << s.fp << '\n';
    out << "TN           " << s.tn << '\n';
    out << "FN           " << s.fn << '\n';
    out << "TP/(TP+FN)%  " << detail::format_fixed(100.0 * s.tp_rate(), 1) << '\n';
    out << "TN/(TN+FP)%  " << detail::format_fixed(100.0 * s.tn_rate(), 1) << '\n';
    out << "FP/(TP+FN)%  " << detail::format_fixed(100.0 * s.fp_over_pos(), 1) << '\n';
    out << "FN/(TN+FP)%  " << detail::format_fixed(100.0 * s.fn_over_neg(), 1) << '\n';
    out << "TP/FP        " << detail::format_ratio(s.tp_fp_ratio()) << '\n';
    out << "TN/FN        " << detail::format_ratio(s.tn_fn_ratio()) << '\n';
    out << "Accuracy%    " << detail::format_fixed(100.0 * s.accuracy, 1) << '\n';
    out << "Kappa        " << detail::format_fixed(s.kappa, 3) << '\n';
    return out.str();
}

namespace detail {

inline const char* cic_mode_name(CicMode m) {
    switch (m) {
        case CicMode::thresholds: return "thresholds";
        case CicMode::auto_rank: return "auto";
        case CicMode::manual: return "manual";
    }
    return "?";
}

inline const char* measure_name(Measure m) {
    return m == Measure::kappa ? "kappa" : "accuracy";
}

inline const char* cutoff_name(CutoffSelection c) {
    switch (c) {
        case CutoffSelection::optimize: return "optimize";
        case CutoffSelection::naive: return "naive";
        case CutoffSelection::naive_midpoint: return "naive-midpoint";
    }
    return "?";
}

inline const char* stats_name(StatsMode s) {
    switch (s) {
        case StatsMode::full_matrix: return "full";
        case StatsMode::training: return "train";
        case StatsMode::training_n15: return "train-n15";
    }
    return "?";
}

inline std::string sample_size_str(const SampleSize& s) {
    return s.is_fraction ? format_full(s.frac) : std::to_string(s.n);
}

}  // namespace detail

/// Machine-readable run summary as flat key-value lines. Timing is left out
/// so the file is identical across reruns with the same seed.
inline void write_report_kv(std::ostream& out, const PredictionReport& r) {
    out << "cic_mode=" << detail::cic_mode_name(r.config.cic_mode) << '\n';
    out << "b_pos=" << detail::format_full(r.config.b_pos) << '\n';
    out << "b_neg=" << detail::format_full(r.config.b_neg) << '\n';
    if (r.config.auto_t) out << "auto_t=" << *r.config.auto_t << '\n';
    if (!r.config.manual_cols.empty()) {
        out << "manual_cols=";
        for (std::size_t k = 0; k < r.config.manual_cols.size(); ++k)
            out << (k ? "," : "") << r.config.manual_cols[k] + 1;
        out << '\n';
    }
    out << "nb=" << r.config.nb << '\n';
    out << "train_pos=" << detail::sample_size_str(r.config.t_pos) << '\n';
    out << "train_neg=" << detail::sample_size_str(r.config.t_neg) << '\n';
    if (r.config.u_pos) out << "u_pos=" << detail::sample_size_str(*r.config.u_pos) << '\n';
    out << "measure=" << detail::measure_name(r.config.measure) << '\n';
    out << "cutoff_mode=" << detail::cutoff_name(r.config.cutoff) << '\n';
    out << "stats=" << detail::stats_name(r.config.stats_mode) << '\n';
    if (r.config.quantize_digits) out << "quantize_digits=" << *r.config.quantize_digits << '\n';
    out << "seed=" << r.config.seed << '\n';
    out << "t_pos_size=" << r.split.t_pos.size() << '\n';
    out << "t_neg_size=" << r.split.t_neg.size() << '\n';
    if (!r.split.u_pos.empty()) out << "u_pos_size=" << r.split.u_pos.size() << '\n';
    out << "domain_size=" << r.domain.size() << '\n';
    out << "cic_count=" << r.cics.size() << '\n';
    for (std::size_t k = 0; k < r.cics.size(); ++k)
        out << "cic_" << k + 1 << '=' << r.cics[k].col + 1 << ','
            << detail::format_full(r.cics[k].lo) << ',' << detail::format_full(r.cics[k].hi)
            << '\n';
    out << "c_opt=" << detail::format_full(r.cutoff.c_opt) << '\n';
    out << "q_opt=" << detail::format_full(r.cutoff.q_opt) << '\n';
    out << "tp=" << r.stats.tp << '\n';
    out << "fp=" << r.stats.fp << '\n';
    out << "tn=" << r.stats.tn << '\n';
    out << "fn=" << r.stats.fn << '\n';
    out << "accuracy=" << detail::format_full(r.stats.accuracy) << '\n';
    out << "kappa=" << detail::format_full(r.stats.kappa) << '\n';
    if (r.batch) {
        out << "batch_size=" << r.batch->batch_size << '\n';
        out << "batch_count=" << r.batch->batches.size() << '\n';
        out << "batch_min_kappa=" << detail::format_full(r.batch->min_kappa) << '\n';
        out << "batch_max_kappa=" << detail::format_full(r.batch->max_kappa) << '\n';
    }
}

/// Indicator values for the score scatter plot, truly positive objects
/// first (each group in ascending object order). Object ids are 1-based.
inline void write_sats_csv(std::ostream& out, const PredictionReport& r) {
    out << "object_id,true_label,score\n";
    for (int want = 1; want >= 0; --want)
        for (std::size_t k = 0; k < r.domain.size(); ++k)
            if (r.truth[k] == want)
                out << r.domain[k] + 1 << ',' << int(r.truth[k]) << ','
                    << detail::format_full(r.scores[k]) << '\n';
}

/// The cutoff sweep for the cutoff-vs-quality plot.
inline void write_cutoffs_csv(std::ostream& out, const std::vector<SweepPoint>& sweep) {
    out << "cutoff,accuracy,kappa\n";
    for (const SweepPoint& p : sweep)
        out << detail::format_full(p.cutoff) << ',' << detail::format_full(p.accuracy) << ','
            << detail::format_full(p.kappa) << '\n';
}

/// Per-bin data behind the five-panel histogram figures of one column:
/// positive-training, negative-training and whole-column histograms on
/// shared boundaries plus their (absolute) difference. Boundaries span the
/// whole column, so the empty outer bins are omitted.
inline void write_histpanel_csv(std::ostream& out, const ScaledMatrix& s,
                                const TrainingSplit& split, Index col, std::size_t nb) {
    const std::vector<double> all = s.values.column(col);
    const BinBoundaries b = equal_width_boundaries(all, nb);
    const Histogram h_all = histogram(all, b);
    const Histogram h_pos = histogram(s.values.column(col, split.t_pos), b);
    const Histogram h_neg = histogram(s.values.column(col, split.t_neg), b);
    out << "bin_lo,bin_hi,h_pos,h_neg,h_all,diff,absdiff\n";
    for (std::size_t k = 1; k + 1 < b.bin_count(); ++k) {
        const double diff = h_pos.freqs[k] - h_neg.freqs[k];
        out << detail::format_full(b.inner[k - 1]) << ',' << detail::format_full(b.inner[k])
            << ',' << detail::format_full(h_pos.freqs[k]) << ','
            << detail::format_full(h_neg.freqs[k]) << ',' << detail::format_full(h_all.freqs[k])
            << ',' << detail::format_full(diff) << ',' << detail::format_full(std::fabs(diff))
            << '\n';
    }
}

/// Cic triples as (col, lo, hi) with 1-based columns; full precision so a
/// later run can reuse the boundaries exactly.
inline void write_cics_csv(std::ostream& out, const CicList& cics) {
    out << "col,lo,hi\n";
    for (const Cic& c : cics)
        out << c.col + 1 << ',' << detail::format_full(c.lo) << ','
            << detail::format_full(c.hi) << '\n';
}

inline CicList read_cics_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty cic file");
    CicList out;
    std::size_t row1 = 1;
    while (std::getline(in, line)) {
        ++row1;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 3)
            throw std::runtime_error("cic rows must be 'col,lo,hi' (row " +
                                     std::to_string(row1) + ")");
        const double col = detail::parse_cell(cells[0], row1, 1);
        if (col < 1 || col != std::floor(col))
            throw std::runtime_error("cic column must be a 1-based index (row " +
                                     std::to_string(row1) + ")");
        Cic c;
        c.col = static_cast<Index>(col) - 1;
        c.lo = detail::parse_cell(cells[1], row1, 2);
        c.hi = detail::parse_cell(cells[2], row1, 3);
        if (!(c.lo < c.hi))
            throw std::runtime_error("cic bounds must satisfy lo < hi (row " +
                                     std::to_string(row1) + ")");
        out.push_back(c);
    }
    if (out.empty()) throw std::runtime_error("cic file has no entries");
    return out;
}

/// The n_diff ranking in the rank/col/n_diff/n_pos/n_neg layout (1-based
/// columns).
inline void write_relevance_csv(std::ostream& out, const RelevanceTable& table) {
    out << "rank,col,n_diff,n_pos,n_neg\n";
    for (std::size_t r = 0; r < table.size(); ++r)
        out << r + 1 << ',' << table[r].col + 1 << ',' << table[r].n_diff << ','
            << table[r].n_pos << ',' << table[r].n_neg << '\n';
}

}  // namespace hdc
