// hdc — command-line front end for the histogram-distribution classifier.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hdc/hdc.hpp"

namespace {

struct DataOpts {
    std::string path;
    std::string label_col = "state";
    std::vector<std::string> pass_values = {"0"};
    std::vector<std::string> positive_values;
    std::string step_map;
    std::vector<std::string> steps;
    std::vector<std::size_t> keep_cols;  // 1-based
};

struct RunOpts {
    std::string cic_mode = "thresholds";
    double b_pos = 0.3;
    double b_neg = 0.01;
    std::optional<std::size_t> auto_t;
    std::vector<std::size_t> cols;  // 1-based
    std::size_t nb = 1000;
    std::string train_pos = "0.2";
    std::string train_neg = "0.05";
    std::string measure = "kappa";
    std::string cutoff = "optimize";
    std::optional<std::size_t> batch_size;
    std::string stats = "full";
    std::optional<int> quantize_digits;
    std::string profile = "none";
    std::uint64_t seed = 1;
    std::string import_cics;
    std::string export_cics;
    std::string emit_plots;
    std::size_t panel_bins = 100;
    std::string out;
};

void add_data_flags(CLI::App* cmd, DataOpts& d) {
    cmd->add_option("--data", d.path, "input CSV with header row")->required();
    cmd->add_option("--label-col", d.label_col, "name of the label column");
    cmd->add_option("--pass-values", d.pass_values,
                    "label values meaning 'pass'; anything else is positive")
        ->delimiter(',');
    cmd->add_option("--positive-values", d.positive_values,
                    "label values marking positives directly (inverts the rule)")
        ->delimiter(',');
    cmd->add_option("--step-map", d.step_map, "sidecar CSV assigning columns to MeasSteps");
    cmd->add_option("--steps", d.steps, "restrict to these MeasSteps")->delimiter(',');
    cmd->add_option("--keep-cols", d.keep_cols, "restrict to these 1-based columns")
        ->delimiter(',');
}

void add_train_flags(CLI::App* cmd, RunOpts& r) {
    cmd->add_option("--train-pos", r.train_pos,
                    "positive training size: fraction in (0,1] or absolute count");
    cmd->add_option("--train-neg", r.train_neg, "negative training size");
    cmd->add_option("--nb", r.nb, "histogram bin count (>= 3)");
    cmd->add_option("--seed", r.seed, "RNG seed for the training-set draw");
    cmd->add_option("--stats", r.stats, "scaling statistics source")
        ->check(CLI::IsMember({"full", "train", "train-n15"}));
    cmd->add_option("--quantize-digits", r.quantize_digits,
                    "round scaled entries to this many significant digits");
    cmd->add_option("--profile", r.profile, "parameter profile; 'wafer' = 3 digits, nb 1000")
        ->check(CLI::IsMember({"none", "wafer"}));
}

void add_classify_flags(CLI::App* cmd, RunOpts& r) {
    add_train_flags(cmd, r);
    cmd->add_option("--cic-mode", r.cic_mode, "how indicator columns are selected")
        ->check(CLI::IsMember({"thresholds", "auto", "manual"}));
    cmd->add_option("--bpos", r.b_pos, "lower bound b+ on the positive peak frequency");
    cmd->add_option("--bneg", r.b_neg, "upper bound b- on the negative frequency");
    cmd->add_option("--t", r.auto_t, "auto mode: number of top-ranked columns");
    cmd->add_option("--cols", r.cols, "manual mode: 1-based column numbers")->delimiter(',');
    cmd->add_option("--measure", r.measure, "quality measure optimized by the sweep")
        ->check(CLI::IsMember({"kappa", "accuracy"}));
    cmd->add_option("--cutoff", r.cutoff, "cutoff selection rule")
        ->check(CLI::IsMember({"optimize", "naive", "naive-midpoint"}));
    cmd->add_option("--batch-size", r.batch_size, "also optimize per fixed-size batch");
    cmd->add_option("--import-cics", r.import_cics, "reuse Cic boundaries from this CSV");
    cmd->add_option("--export-cics", r.export_cics, "write the chosen Cics to this CSV");
    cmd->add_option("--emit-plots", r.emit_plots, "directory for sats/cutoffs/histpanel data");
    cmd->add_option("--panel-bins", r.panel_bins, "bins for the histpanel files");
    cmd->add_option("--out", r.out, "write the machine-readable report here");
}

hdc::SampleSize parse_size(const std::string& text, const std::string& flag) {
    try {
        if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
            text.find('E') != std::string::npos)
            return hdc::SampleSize::fraction(std::stod(text));
        const long long n = std::stoll(text);
        if (n < 1) throw std::invalid_argument("non-positive count");
        return hdc::SampleSize::count(static_cast<std::size_t>(n));
    } catch (const std::exception&) {
        throw std::runtime_error(flag + " must be a fraction in (0,1] or a count >= 1, got '" +
                                 text + "'");
    }
}

hdc::Dataset load_dataset(const DataOpts& d) {
    hdc::LabelRule rule;
    if (!d.positive_values.empty()) {
        rule.kind = hdc::LabelRule::Kind::match_positive;
        rule.values = {d.positive_values.begin(), d.positive_values.end()};
    } else {
        rule.values = {d.pass_values.begin(), d.pass_values.end()};
    }
    hdc::Dataset ds = hdc::load_csv(d.path, d.label_col, rule);
    if (!d.step_map.empty()) hdc::load_step_map(ds, d.step_map);
    if (!d.steps.empty()) ds = hdc::filter_steps(ds, d.steps);
    if (!d.keep_cols.empty()) {
        std::vector<hdc::Index> cols;
        for (std::size_t c : d.keep_cols) {
            if (c < 1) throw std::runtime_error("--keep-cols uses 1-based column numbers");
            cols.push_back(c - 1);
        }
        ds = hdc::filter_columns(ds, cols);
    }
    return ds;
}

hdc::RunConfig make_config(const RunOpts& r) {
    hdc::RunConfig cfg;
    if (r.cic_mode == "thresholds") cfg.cic_mode = hdc::CicMode::thresholds;
    if (r.cic_mode == "auto") cfg.cic_mode = hdc::CicMode::auto_rank;
    if (r.cic_mode == "manual") cfg.cic_mode = hdc::CicMode::manual;
    cfg.b_pos = r.b_pos;
    cfg.b_neg = r.b_neg;
    cfg.auto_t = r.auto_t;
    for (std::size_t c : r.cols) {
        if (c < 1) throw std::runtime_error("--cols uses 1-based column numbers");
        cfg.manual_cols.push_back(c - 1);
    }
    cfg.nb = r.nb;
    cfg.t_pos = parse_size(r.train_pos, "--train-pos");
    cfg.t_neg = parse_size(r.train_neg, "--train-neg");
    cfg.measure = r.measure == "accuracy" ? hdc::Measure::accuracy : hdc::Measure::kappa;
    if (r.cutoff == "optimize") cfg.cutoff = hdc::CutoffSelection::optimize;
    if (r.cutoff == "naive") cfg.cutoff = hdc::CutoffSelection::naive;
    if (r.cutoff == "naive-midpoint") cfg.cutoff = hdc::CutoffSelection::naive_midpoint;
    cfg.batch_size = r.batch_size;
    if (r.stats == "full") cfg.stats_mode = hdc::StatsMode::full_matrix;
    if (r.stats == "train") cfg.stats_mode = hdc::StatsMode::training;
    if (r.stats == "train-n15") cfg.stats_mode = hdc::StatsMode::training_n15;
    cfg.quantize_digits = r.quantize_digits;
    if (r.profile == "wafer" && !cfg.quantize_digits) cfg.quantize_digits = 3;
    cfg.seed = r.seed;
    if (!r.import_cics.empty()) {
        std::ifstream in(r.import_cics);
        if (!in) throw std::runtime_error("cannot open '" + r.import_cics + "'");
        cfg.explicit_cics = hdc::read_cics_csv(in);
    }
    return cfg;
}

void emit_outputs(const hdc::DataMatrix& x, const hdc::PredictionReport& report,
                  const RunOpts& r) {
    if (!r.export_cics.empty()) {
        std::ofstream out(r.export_cics);
        if (!out) throw std::runtime_error("cannot write '" + r.export_cics + "'");
        hdc::write_cics_csv(out, report.cics);
    }
    if (!r.out.empty()) {
        std::ofstream out(r.out);
        if (!out) throw std::runtime_error("cannot write '" + r.out + "'");
        hdc::write_report_kv(out, report);
    }
    if (!r.emit_plots.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(r.emit_plots);
        {
            std::ofstream out(fs::path(r.emit_plots) / "sats.csv");
            hdc::write_sats_csv(out, report);
        }
        {
            std::ofstream out(fs::path(r.emit_plots) / "cutoffs.csv");
            hdc::write_cutoffs_csv(out, report.cutoff.sweep);
        }
        const hdc::ScaledMatrix scaled =
            hdc::scale_for_run(x, report.split, report.config);
        for (const hdc::Cic& c : report.cics) {
            std::ofstream out(fs::path(r.emit_plots) /
                              ("histpanel_" + std::to_string(c.col + 1) + ".csv"));
            hdc::write_histpanel_csv(out, scaled, report.split, c.col, r.panel_bins);
        }
    }
}

void print_batch_report(const hdc::BatchReport& b) {
    std::cout << "Batchsize " << b.batch_size << "\n";
    std::cout << "batch,first,last,c_opt,accuracy,kappa\n";
    for (std::size_t k = 0; k < b.batches.size(); ++k) {
        const auto& row = b.batches[k];
        char line[128];
        std::snprintf(line, sizeof line, "%zu,%zu,%zu,%g,%.3f,%.3f", k + 1, row.begin + 1,
                      row.end, row.c_opt, row.accuracy, row.kappa);
        std::cout << line << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", b.max_kappa);
    std::cout << "Max Kappa                     " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.3f", b.min_kappa);
    std::cout << "Min Kappa                     " << buf << "\n";
    std::cout << "#Batches with kappa=1.0       " << b.n_kappa_one << "\n";
    std::cout << "#Batches with kappa in [0.9,1.0)  " << b.n_kappa_090 << "\n";
    std::cout << "#Batches with kappa in [0.8,0.9)  " << b.n_kappa_080 << "\n";
    std::cout << "#Batches with kappa in [0.7,0.8)  " << b.n_kappa_070 << "\n";
    std::cout << "#Batches with kappa < 0.7     " << b.n_kappa_below << "\n";
}

void warn_if_inverted(const hdc::PredictionReport& report) {
    // a negative naive cutoff means Av1 < Av0: the training sets do not
    // characterize the positive class
    if (report.config.cutoff == hdc::CutoffSelection::naive && report.cutoff.c_opt < 0.0)
        std::cerr << "warning: negative naive cutoff (" << report.cutoff.c_opt
                  << "); positive scores average below negative ones, training sets"
                     " may be insufficient\n";
}

int cmd_classify(const DataOpts& d, const RunOpts& r, bool want_batch) {
    const hdc::Dataset ds = load_dataset(d);
    hdc::RunConfig cfg = make_config(r);
    if (want_batch && !cfg.batch_size)
        throw std::runtime_error("batch requires --batch-size");
    const hdc::PredictionReport report = hdc::classify(ds.matrix, ds.labels, cfg);
    warn_if_inverted(report);
    std::cout << format_confusion_table(report.stats);
    if (report.batch) print_batch_report(*report.batch);
    emit_outputs(ds.matrix, report, r);
    std::cerr << "classified " << report.domain.size() << " objects with "
              << report.cics.size() << " cics in " << report.elapsed_seconds << " s\n";
    return 0;
}

int cmd_union(const DataOpts& d, const RunOpts& r, const std::string& u_pos,
              const std::string& indicator, std::size_t grid_points) {
    const hdc::Dataset ds = load_dataset(d);
    hdc::RunConfig cfg = make_config(r);
    cfg.u_pos = parse_size(u_pos, "--u-pos");
    std::vector<double> grid;
    if (grid_points < 2) throw std::runtime_error("--grid-points must be at least 2");
    for (std::size_t i = 0; i < grid_points; ++i)
        grid.push_back(static_cast<double>(i) / static_cast<double>(grid_points - 1));
    const auto kind =
        indicator == "qmin" ? hdc::UnionIndicator::q_min : hdc::UnionIndicator::q_max;
    const hdc::PredictionReport report =
        hdc::union_classify(ds.matrix, ds.labels, cfg, kind, grid);
    warn_if_inverted(report);
    std::cout << format_confusion_table(report.stats);
    emit_outputs(ds.matrix, report, r);
    std::cerr << "classified " << report.domain.size() << " objects with "
              << report.cics.size() << " cics in " << report.elapsed_seconds << " s\n";
    return 0;
}

int cmd_rank(const DataOpts& d, const RunOpts& r, std::size_t top) {
    const hdc::Dataset ds = load_dataset(d);
    const hdc::RunConfig cfg = make_config(r);
    const hdc::TrainingSplit split =
        hdc::split_training(ds.labels, cfg.t_pos, cfg.t_neg, std::nullopt, cfg.seed);
    const hdc::ScaledMatrix scaled = hdc::scale_for_run(ds.matrix, split, cfg);
    const hdc::RelevanceTable table = hdc::relevance_table(scaled, split, cfg.nb);
    std::cout << "rank,col,n_diff,n_pos,n_neg\n";
    for (std::size_t k = 0; k < table.size() && k < top; ++k)
        std::cout << k + 1 << ',' << table[k].col + 1 << ',' << table[k].n_diff << ','
                  << table[k].n_pos << ',' << table[k].n_neg << '\n';
    if (!r.out.empty()) {
        std::ofstream out(r.out);
        if (!out) throw std::runtime_error("cannot write '" + r.out + "'");
        hdc::write_relevance_csv(out, table);
    }
    return 0;
}

int cmd_autocics(const DataOpts& d, const RunOpts& r) {
    const hdc::Dataset ds = load_dataset(d);
    const hdc::RunConfig cfg = make_config(r);
    const hdc::TrainingSplit split =
        hdc::split_training(ds.labels, cfg.t_pos, cfg.t_neg, std::nullopt, cfg.seed);
    const hdc::ScaledMatrix scaled = hdc::scale_for_run(ds.matrix, split, cfg);
    const hdc::CicList cics = hdc::auto_cics(scaled, split, cfg.nb, cfg.auto_t);
    hdc::write_cics_csv(std::cout, cics);
    if (!r.export_cics.empty()) {
        std::ofstream out(r.export_cics);
        if (!out) throw std::runtime_error("cannot write '" + r.export_cics + "'");
        hdc::write_cics_csv(out, cics);
    }
    return 0;
}

int cmd_gen(const std::string& out_path, std::size_t m, std::size_t n, double rate,
            const std::vector<std::string>& planted, std::size_t discrete_cols,
            const std::string& noise, std::uint64_t seed) {
    hdc::GeneratorSpec spec;
    spec.m = m;
    spec.n = n;
    spec.positive_rate = rate;
    spec.discrete_cols = discrete_cols;
    spec.noise = noise == "laplace" ? hdc::NoiseKind::laplace : hdc::NoiseKind::gaussian;
    spec.seed = seed;
    for (const std::string& p : planted) {
        hdc::PlantedColumn pc;
        const auto c1 = p.find(':');
        const auto c2 = p.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("--planted expects col:shift:spread, got '" + p + "'");
        const long long col1 = std::stoll(p.substr(0, c1));
        if (col1 < 1) throw std::runtime_error("--planted uses 1-based column numbers");
        pc.col = static_cast<hdc::Index>(col1 - 1);
        pc.shift = std::stod(p.substr(c1 + 1, c2 - c1 - 1));
        pc.spread = std::stod(p.substr(c2 + 1));
        spec.planted.push_back(pc);
    }
    const hdc::GeneratedLot lot = hdc::generate(spec);
    hdc::write_csv(out_path, lot.matrix, lot.labels);
    std::cerr << "wrote " << m << "x" << n << " lot with " << spec.planted.size()
              << " planted columns to " << out_path << "\n";
    return 0;
}

int cmd_iris(const std::string& type, const RunOpts& r) {
    std::vector<hdc::IrisType> types;
    if (type == "all")
        types = {hdc::IrisType::setosa, hdc::IrisType::versicolor, hdc::IrisType::virginica};
    else
        types = {hdc::iris_type_from_name(type)};

    const bool wants_output =
        !r.out.empty() || !r.emit_plots.empty() || !r.export_cics.empty();
    if (wants_output && types.size() > 1)
        throw std::runtime_error("pick a single --type when writing report or plot files");

    hdc::RunConfig cfg = make_config(r);
    std::cout << "type,TP,FP,TN,FN,Kappa,Accuracy%\n";
    for (hdc::IrisType t : types) {
        const hdc::PredictionReport report =
            hdc::classify(hdc::iris_matrix(), hdc::iris_labels(t), cfg);
        char line[128];
        std::snprintf(line, sizeof line, "%s,%zu,%zu,%zu,%zu,%.3f,%.1f",
                      hdc::iris_type_name(t), report.stats.tp, report.stats.fp,
                      report.stats.tn, report.stats.fn, report.stats.kappa,
                      100.0 * report.stats.accuracy);
        std::cout << line << "\n";
        if (wants_output) emit_outputs(hdc::iris_matrix(), report, r);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"histogram-distribution classifier for labeled measurement data"};
    app.require_subcommand(1);

    DataOpts data;
    RunOpts run;

    auto* classify = app.add_subcommand("classify", "train, score and threshold a data lot");
    add_data_flags(classify, data);
    add_classify_flags(classify, run);

    auto* rank = app.add_subcommand("rank", "n_diff relevance ranking of all columns");
    std::size_t rank_top = 10;
    add_data_flags(rank, data);
    add_train_flags(rank, run);
    rank->add_option("--top", rank_top, "rows to print");
    rank->add_option("--out", run.out, "write the full table to this CSV");

    auto* autocics = app.add_subcommand("autocics", "list the top-t columns as Cic triples");
    add_data_flags(autocics, data);
    add_train_flags(autocics, run);
    autocics->add_option("--t", run.auto_t, "how many top-ranked columns (default 10%)");
    autocics->add_option("--export-cics", run.export_cics, "also write the triples here");

    auto* union_cmd = app.add_subcommand("union", "activity-pattern similarity variant");
    std::string u_pos = "0.1";
    std::string indicator = "qmax";
    std::size_t grid_points = 101;
    add_data_flags(union_cmd, data);
    add_classify_flags(union_cmd, run);
    union_cmd->add_option("--u-pos", u_pos, "size of the reference positive set U+")
        ->required();
    union_cmd->add_option("--indicator", indicator, "which similarity drives predictions")
        ->check(CLI::IsMember({"qmax", "qmin"}));
    union_cmd->add_option("--grid-points", grid_points, "cutoff grid resolution in [0,1]");

    auto* batch = app.add_subcommand("batch", "classify with per-batch cutoff optimization");
    add_data_flags(batch, data);
    add_classify_flags(batch, run);

    auto* gen = app.add_subcommand("gen", "write a synthetic lot with planted indicators");
    std::string gen_out;
    std::size_t gen_m = 10000, gen_n = 50, gen_discrete = 0;
    double gen_rate = 0.05;
    std::vector<std::string> gen_planted;
    std::string gen_noise = "gaussian";
    std::uint64_t gen_seed = 1;
    gen->add_option("--out", gen_out, "output CSV path")->required();
    gen->add_option("--m", gen_m, "objects");
    gen->add_option("--n", gen_n, "features");
    gen->add_option("--positive-rate", gen_rate, "fraction of positive objects");
    gen->add_option("--planted", gen_planted, "planted column as col:shift:spread");
    gen->add_option("--discrete-cols", gen_discrete, "integer-valued noise columns");
    gen->add_option("--noise", gen_noise, "background noise distribution")
        ->check(CLI::IsMember({"gaussian", "laplace"}));
    gen->add_option("--seed", gen_seed, "generator seed");

    auto* iris = app.add_subcommand("iris", "built-in iris one-vs-rest demonstration");
    std::string iris_type = "all";
    iris->add_option("--type", iris_type, "which species is the positive class")
        ->check(CLI::IsMember({"setosa", "versicolor", "virginica", "all"}));
    add_classify_flags(iris, run);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(iris)) {
            // iris defaults per the reference setup: petal columns, nb 5, 60%/1%
            if (run.cols.empty()) run.cols = {3, 4};
            if (iris->count("--nb") == 0) run.nb = 5;
            if (iris->count("--train-pos") == 0) run.train_pos = "0.6";
            if (iris->count("--train-neg") == 0) run.train_neg = "0.01";
            if (iris->count("--cic-mode") == 0) run.cic_mode = "manual";
            return cmd_iris(iris_type, run);
        }
        if (app.got_subcommand(classify)) return cmd_classify(data, run, false);
        if (app.got_subcommand(batch)) return cmd_classify(data, run, true);
        if (app.got_subcommand(rank)) return cmd_rank(data, run, rank_top);
        if (app.got_subcommand(autocics)) return cmd_autocics(data, run);
        if (app.got_subcommand(union_cmd))
            return cmd_union(data, run, u_pos, indicator, grid_points);
        if (app.got_subcommand(gen))
            return cmd_gen(gen_out, gen_m, gen_n, gen_rate, gen_planted, gen_discrete,
                           gen_noise, gen_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
