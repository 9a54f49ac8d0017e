#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "hdc/classifier.hpp"
#include "hdc/datagen.hpp"
#include "hdc/io.hpp"
#include "hdc/iris.hpp"

using namespace hdc;

namespace {

LabelVector random_labels(Index m, double rate, unsigned seed) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(rate);
    LabelVector v;
    v.bits.resize(m);
    for (auto& b : v.bits) b = coin(rng) ? 1 : 0;
    return v;
}

GeneratedLot small_planted_lot(unsigned seed = 5) {
    GeneratorSpec spec;
    spec.m = 2000;
    spec.n = 20;
    spec.positive_rate = 0.1;
    spec.planted = {{4, 6.0, 0.1}, {9, 7.0, 0.1}, {15, 6.5, 0.1}};
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST_CASE("training split sizes and determinism", "[classifier]") {
    const LabelVector labels = random_labels(10000, 0.1, 77);
    const std::size_t n_pos = labels.positives().size();
    const std::size_t n_neg = labels.negatives().size();

    const TrainingSplit a = split_training(labels, SampleSize::fraction(0.2),
                                           SampleSize::fraction(0.05), std::nullopt, 9);
    CHECK(a.t_pos.size() == static_cast<std::size_t>(0.2 * double(n_pos)));
    CHECK(a.t_neg.size() == static_cast<std::size_t>(0.05 * double(n_neg)));

    const TrainingSplit b = split_training(labels, SampleSize::fraction(0.2),
                                           SampleSize::fraction(0.05), std::nullopt, 9);
    CHECK(a.t_pos == b.t_pos);
    CHECK(a.t_neg == b.t_neg);

    const TrainingSplit c = split_training(labels, SampleSize::fraction(0.2),
                                           SampleSize::fraction(0.05), std::nullopt, 10);
    CHECK(a.t_pos != c.t_pos);

    for (Index i : a.t_pos) CHECK(labels.positive(i));
    for (Index i : a.t_neg) CHECK_FALSE(labels.positive(i));
}

TEST_CASE("fractions resolve with floor and a minimum of one", "[classifier]") {
    // 0.125% of 1600 positives is the paper-scale two-sample regime
    LabelVector labels;
    labels.bits.assign(3200, 0);
    for (Index i = 0; i < 1600; ++i) labels.bits[i] = 1;
    const TrainingSplit s = split_training(labels, SampleSize::fraction(0.00125),
                                           SampleSize::fraction(0.0005), std::nullopt, 4);
    CHECK(s.t_pos.size() == 2);
    CHECK(s.t_neg.size() == 1);  // floor would give 0; the minimum keeps it feasible
    CHECK_THROWS(SampleSize::fraction(0.0));
    CHECK_THROWS(SampleSize::fraction(1.5));
}

TEST_CASE("infeasible split reports the class populations", "[classifier]") {
    const LabelVector labels = random_labels(100, 0.2, 3);
    try {
        split_training(labels, SampleSize::count(1000), SampleSize::count(1));
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1000") != std::string::npos);
        CHECK(msg.find(std::to_string(labels.positives().size())) != std::string::npos);
    }
}

TEST_CASE("u_pos draw stays disjoint from t_pos", "[classifier]") {
    const LabelVector labels = random_labels(500, 0.3, 13);
    const TrainingSplit s = split_training(labels, SampleSize::count(40), SampleSize::count(20),
                                           SampleSize::count(25), 21);
    CHECK(s.u_pos.size() == 25);
    for (Index i : s.u_pos) {
        CHECK(labels.positive(i));
        CHECK_FALSE(std::binary_search(s.t_pos.begin(), s.t_pos.end(), i));
    }
}

TEST_CASE("classification recovers the planted lot", "[classifier]") {
    const GeneratedLot lot = small_planted_lot();
    RunConfig cfg;
    cfg.nb = 500;
    cfg.t_pos = SampleSize::fraction(0.2);
    cfg.t_neg = SampleSize::fraction(0.05);
    cfg.seed = 2;
    const PredictionReport r = classify(lot.matrix, lot.labels, cfg);

    IndexSet cic_cols;
    for (const Cic& c : r.cics) cic_cols.push_back(c.col);
    CHECK(cic_cols == lot.planted_cols);
    CHECK(r.stats.kappa >= 0.95);

    // training objects never show up in the prediction domain
    for (Index i : r.domain) {
        CHECK_FALSE(std::binary_search(r.split.t_pos.begin(), r.split.t_pos.end(), i));
        CHECK_FALSE(std::binary_search(r.split.t_neg.begin(), r.split.t_neg.end(), i));
    }
    CHECK(r.domain.size() + r.split.t_pos.size() + r.split.t_neg.size() == lot.matrix.rows());
    CHECK(r.cutoff.sweep.size() ==
          static_cast<std::size_t>(*std::max_element(r.scores.begin(), r.scores.end()) -
                                   *std::min_element(r.scores.begin(), r.scores.end()) + 1));
    CHECK(*std::max_element(r.scores.begin(), r.scores.end()) <=
          static_cast<double>(r.cics.size()));
}

TEST_CASE("same seed gives byte-identical reports", "[classifier]") {
    const GeneratedLot lot = small_planted_lot(8);
    RunConfig cfg;
    cfg.nb = 300;
    cfg.t_pos = SampleSize::fraction(0.3);
    cfg.t_neg = SampleSize::fraction(0.1);
    cfg.seed = 123;
    std::ostringstream a, b;
    write_report_kv(a, classify(lot.matrix, lot.labels, cfg));
    write_report_kv(b, classify(lot.matrix, lot.labels, cfg));
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
}

TEST_CASE("iris setosa with manual petal cics performs near the reference", "[classifier]") {
    RunConfig cfg;
    cfg.cic_mode = CicMode::manual;
    cfg.manual_cols = {2, 3};
    cfg.nb = 5;
    cfg.t_pos = SampleSize::fraction(0.6);
    cfg.t_neg = SampleSize::fraction(0.01);
    cfg.seed = 7;
    const PredictionReport r = classify(iris_matrix(), iris_labels(IrisType::setosa), cfg);
    CHECK(r.domain.size() == 119);
    CHECK(r.stats.kappa >= 0.80);
    CHECK(r.stats.accuracy >= 0.95);
}

TEST_CASE("degenerate cases raise explicit errors", "[classifier]") {
    DataMatrix constant(20, 1);
    for (Index i = 0; i < 20; ++i) constant(i, 0) = 3.0;
    const LabelVector labels = random_labels(20, 0.4, 5);
    RunConfig cfg;
    cfg.nb = 5;
    cfg.t_pos = SampleSize::fraction(0.5);
    cfg.t_neg = SampleSize::fraction(0.5);
    CHECK_THROWS_WITH(classify(constant, labels, cfg), "no candidate indicator columns");

    RunConfig exhaust = cfg;
    exhaust.cic_mode = CicMode::manual;
    exhaust.manual_cols = {0};
    exhaust.t_pos = SampleSize::fraction(1.0);
    exhaust.t_neg = SampleSize::fraction(1.0);
    CHECK_THROWS_WITH(classify(constant, labels, exhaust), "nothing to classify");
}

TEST_CASE("auto mode with t = n matches wide-open thresholds", "[classifier]") {
    const GeneratedLot lot = small_planted_lot(31);
    RunConfig cfg;
    cfg.nb = 200;
    cfg.t_pos = SampleSize::fraction(0.25);
    cfg.t_neg = SampleSize::fraction(0.1);
    cfg.seed = 6;

    RunConfig all_cols = cfg;
    all_cols.cic_mode = CicMode::auto_rank;
    all_cols.auto_t = lot.matrix.cols();
    const PredictionReport via_auto = classify(lot.matrix, lot.labels, all_cols);

    RunConfig open = cfg;
    open.b_pos = 0.0;
    open.b_neg = 1.0;
    const PredictionReport via_thresholds = classify(lot.matrix, lot.labels, open);

    REQUIRE(via_auto.cics.size() == via_thresholds.cics.size());
    auto sorted_triples = [](CicList cics) {
        std::sort(cics.begin(), cics.end(),
                  [](const Cic& a, const Cic& b) { return a.col < b.col; });
        return cics;
    };
    const CicList a = sorted_triples(via_auto.cics);
    const CicList t = sorted_triples(via_thresholds.cics);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].col == t[k].col);
        CHECK(a[k].lo == t[k].lo);
        CHECK(a[k].hi == t[k].hi);
    }
}

TEST_CASE("imported cic boundaries bypass selection", "[classifier]") {
    const GeneratedLot lot = small_planted_lot(44);
    RunConfig cfg;
    cfg.nb = 300;
    cfg.t_pos = SampleSize::fraction(0.2);
    cfg.t_neg = SampleSize::fraction(0.05);
    cfg.seed = 3;
    const PredictionReport first = classify(lot.matrix, lot.labels, cfg);

    RunConfig reuse = cfg;
    reuse.explicit_cics = first.cics;
    reuse.seed = 4;  // different split, same boundaries
    const PredictionReport second = classify(lot.matrix, lot.labels, reuse);
    REQUIRE(second.cics.size() == first.cics.size());
    for (std::size_t k = 0; k < first.cics.size(); ++k) {
        CHECK(second.cics[k].col == first.cics[k].col);
        CHECK(second.cics[k].lo == first.cics[k].lo);
    }
    CHECK(second.stats.kappa >= 0.9);
}

TEST_CASE("naive cutoff modes produce a one-point sweep", "[classifier]") {
    const GeneratedLot lot = small_planted_lot(15);
    RunConfig cfg;
    cfg.nb = 300;
    cfg.t_pos = SampleSize::fraction(0.3);
    cfg.t_neg = SampleSize::fraction(0.1);
    cfg.cutoff = CutoffSelection::naive;
    const PredictionReport r = classify(lot.matrix, lot.labels, cfg);
    CHECK(r.cutoff.sweep.size() == 1);
    CHECK(r.cutoff.c_opt > 0.0);

    RunConfig opt = cfg;
    opt.cutoff = CutoffSelection::optimize;
    const PredictionReport best = classify(lot.matrix, lot.labels, opt);
    CHECK(best.cutoff.q_opt >= r.cutoff.q_opt);
}

TEST_CASE("training-only scaling modes run end to end", "[classifier]") {
    const GeneratedLot lot = small_planted_lot(52);
    for (StatsMode mode : {StatsMode::training, StatsMode::training_n15}) {
        RunConfig cfg;
        cfg.nb = 300;
        cfg.t_pos = SampleSize::fraction(0.3);
        cfg.t_neg = SampleSize::fraction(0.1);
        cfg.stats_mode = mode;
        const PredictionReport r = classify(lot.matrix, lot.labels, cfg);
        CHECK(r.stats.kappa > 0.8);
    }
}

TEST_CASE("quantized scaling keeps the planted lot separable", "[classifier]") {
    const GeneratedLot lot = small_planted_lot(61);
    RunConfig cfg;
    cfg.nb = 300;
    cfg.t_pos = SampleSize::fraction(0.3);
    cfg.t_neg = SampleSize::fraction(0.1);
    cfg.quantize_digits = 3;
    const PredictionReport r = classify(lot.matrix, lot.labels, cfg);
    CHECK(r.stats.kappa > 0.9);
}
