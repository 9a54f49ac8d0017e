#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hdc/cic.hpp"
#include "hdc/classifier.hpp"
#include "hdc/datagen.hpp"
#include "hdc/scaling.hpp"

using namespace hdc;

TEST_CASE("regeneration with the same seed is bit-identical", "[datagen]") {
    GeneratorSpec spec;
    spec.m = 500;
    spec.n = 12;
    spec.positive_rate = 0.1;
    spec.planted = {{3, 6.0, 0.1}};
    spec.discrete_cols = 2;
    spec.seed = 1234;
    const GeneratedLot a = generate(spec);
    const GeneratedLot b = generate(spec);
    CHECK(a.labels.bits == b.labels.bits);
    CHECK(a.matrix.data() == b.matrix.data());

    spec.seed = 1235;
    const GeneratedLot c = generate(spec);
    CHECK(a.matrix.data() != c.matrix.data());
}

TEST_CASE("label rate stays near the requested fraction", "[datagen]") {
    GeneratorSpec spec;
    spec.m = 20000;
    spec.n = 3;
    spec.positive_rate = 0.05;
    spec.seed = 7;
    const GeneratedLot lot = generate(spec);
    const double rate = double(lot.labels.positives().size()) / double(spec.m);
    const double bound = 2.0 * std::sqrt(0.05 * 0.95 / double(spec.m));
    CHECK(std::fabs(rate - 0.05) <= bound);
}

TEST_CASE("generated values are always finite", "[datagen]") {
    GeneratorSpec spec;
    spec.m = 300;
    spec.n = 10;
    spec.positive_rate = 0.2;
    spec.planted = {{0, 8.0, 0.2}};
    spec.discrete_cols = 3;
    spec.noise = NoiseKind::laplace;
    spec.seed = 3;
    const GeneratedLot lot = generate(spec);
    for (double v : lot.matrix.data()) CHECK(std::isfinite(v));
}

TEST_CASE("discrete columns hold only small integers", "[datagen]") {
    GeneratorSpec spec;
    spec.m = 200;
    spec.n = 6;
    spec.positive_rate = 0.3;
    spec.planted = {{1, 6.0, 0.1}};
    spec.discrete_cols = 2;  // occupies the last two non-planted columns
    spec.seed = 11;
    const GeneratedLot lot = generate(spec);
    for (Index j : {Index(4), Index(5)}) {
        for (Index i = 0; i < spec.m; ++i) {
            const double v = lot.matrix(i, j);
            CHECK(v == std::floor(v));
            CHECK(v >= 0.0);
            CHECK(v <= 9.0);
        }
    }
}

TEST_CASE("tiny spread makes planted columns easy to find", "[datagen]") {
    GeneratorSpec spec;
    spec.m = 1000;
    spec.n = 16;
    spec.positive_rate = 0.15;
    spec.planted = {{2, 10.0, 0.02}, {9, 10.0, 0.02}};
    spec.seed = 19;
    const GeneratedLot lot = generate(spec);
    const ScaledMatrix s = scale(lot.matrix);
    const TrainingSplit split = split_training(lot.labels, SampleSize::fraction(0.4),
                                               SampleSize::fraction(0.2), std::nullopt, 5);
    const CicList cics = find_cics(s, split, 0.5, 0.01, 1000);
    IndexSet cols;
    for (const Cic& c : cics) cols.push_back(c.col);
    CHECK(cols == lot.planted_cols);
}

TEST_CASE("no planted signal means no usable classifier", "[datagen]") {
    GeneratorSpec spec;
    spec.m = 1200;
    spec.n = 10;
    spec.positive_rate = 0.2;
    spec.seed = 23;
    const GeneratedLot lot = generate(spec);
    RunConfig cfg;
    cfg.cic_mode = CicMode::auto_rank;
    cfg.auto_t = 3;
    cfg.nb = 100;
    cfg.t_pos = SampleSize::fraction(0.3);
    cfg.t_neg = SampleSize::fraction(0.2);
    const PredictionReport r = classify(lot.matrix, lot.labels, cfg);
    CHECK(std::fabs(r.stats.kappa) < 0.2);
}

TEST_CASE("generator validation", "[datagen]") {
    GeneratorSpec bad;
    bad.m = 10;
    bad.n = 4;
    bad.positive_rate = 0.0;
    CHECK_THROWS(generate(bad));
    bad.positive_rate = 0.5;
    bad.planted = {{9, 6.0, 0.1}};
    CHECK_THROWS_WITH(generate(bad), "planted column out of range");
    bad.planted = {{1, 6.0, 0.1}, {1, 7.0, 0.1}};
    CHECK_THROWS_WITH(generate(bad), "duplicate planted column");
    bad.planted = {{0, 6.0, 0.1}, {1, 6.0, 0.1}, {2, 6.0, 0.1}, {3, 6.0, 0.1}};
    bad.discrete_cols = 1;
    CHECK_THROWS_WITH(generate(bad), "not enough non-planted columns for discrete count");
}
