#include <catch2/catch_amalgamated.hpp>

#include "gfmm/gfmm.hpp"
#include "testing_support.hpp"

using namespace gfmm;
using Catch::Matchers::WithinAbs;

namespace {

Hyperbox box2d(double v1, double v2, double w1, double w2) {
    Hyperbox b;
    b.min_point = {v1, v2};
    b.max_point = {w1, w2};
    b.label = 0;
    b.sample_count = 1;
    return b;
}

}  // namespace

TEST_CASE("ramp clamps the scaled argument into [0,1]") {
    CHECK(ramp(0.5, 1.0) == 0.5);
    CHECK(ramp(-0.2, 1.0) == 0.0);
    CHECK(ramp(0.8, 2.0) == 1.0);
    CHECK_THROWS_AS(ramp(0.5, 0.0), DataError);
    CHECK_THROWS_AS(ramp(0.5, -1.0), DataError);
}

TEST_CASE("numeric membership is 1 exactly for contained patterns") {
    HyperParams params;
    Hyperbox b = box2d(0.2, 0.3, 0.6, 0.7);
    CHECK(numeric_membership(MixedPattern::point({0.4, 0.5}, {}), b, params) == 1.0);
}

TEST_CASE("numeric membership decays with the protrusion distance") {
    HyperParams params;
    Hyperbox b = box2d(0.2, 0.3, 0.6, 0.7);
    CHECK_THAT(numeric_membership(MixedPattern::point({0.7, 0.5}, {}), b, params),
               WithinAbs(0.9, 1e-12));

    MixedPattern interval;
    interval.lower = {0.1, 0.3};
    interval.upper = {0.4, 0.7};
    CHECK_THAT(numeric_membership(interval, b, params), WithinAbs(0.9, 1e-12));
}

TEST_CASE("numeric membership rejects dimension mismatches") {
    HyperParams params;
    Hyperbox b = box2d(0.2, 0.3, 0.6, 0.7);
    CHECK_THROWS_AS(numeric_membership(MixedPattern::point({0.4}, {}), b, params),
                    DataError);
}

TEST_CASE("categorical probability is the stored relative frequency") {
    CategoryCounter c;
    for (int i = 0; i < 5; ++i) c.add(0);  // apple
    c.add(1);                              // orange
    CHECK(categorical_probability(1, c) == 1.0 / 6.0);
    CHECK(categorical_probability(0, c) == 5.0 / 6.0);
    CHECK(categorical_probability(2, c) == 0.0);  // banana was never stored
    CHECK_THROWS_AS(categorical_probability(0, CategoryCounter{}), DataError);
}

TEST_CASE("mixed membership blends the numeric and categorical parts") {
    // Numeric part 0.9 (1-D box [0.2, 0.6], point 0.7), one categorical
    // attribute holding {apple:5, orange:1}, queried with apple.
    Hyperbox b;
    b.min_point = {0.2};
    b.max_point = {0.6};
    b.label = 0;
    CategoryCounter c;
    for (int i = 0; i < 5; ++i) c.add(0);
    c.add(1);
    b.categories = {c};
    b.sample_count = 6;

    MixedPattern x = MixedPattern::point({0.7}, {0});
    HyperParams params;
    params.alpha = 0.5;
    CHECK_THAT(mixed_membership(x, b, params),
               WithinAbs(0.5 * 0.9 + 0.5 * (5.0 / 6.0), 1e-12));

    SECTION("alpha = 1 leaves exactly the numeric membership") {
        params.alpha = 1.0;
        CHECK(mixed_membership(x, b, params) == numeric_membership(x, b, params));
    }
    SECTION("alpha = 0 leaves exactly the categorical average") {
        params.alpha = 0.0;
        CHECK(mixed_membership(x, b, params) == 5.0 / 6.0);
    }
}

TEST_CASE("per-dimension gamma scales each dimension's decay independently") {
    Hyperbox b = box2d(0.2, 0.2, 0.4, 0.4);
    HyperParams params;
    params.gamma = {1.0, 4.0};
    // Protrusion 0.1 on each axis: dimension 0 decays by 0.1, dimension 1 by
    // 0.4, so the min comes from dimension 1.
    CHECK_THAT(numeric_membership(MixedPattern::point({0.5, 0.4}, {}), b, params),
               WithinAbs(0.9, 1e-12));
    CHECK_THAT(numeric_membership(MixedPattern::point({0.4, 0.5}, {}), b, params),
               WithinAbs(0.6, 1e-12));
    // gamma = 4 saturates once the protrusion passes 1/4.
    CHECK(numeric_membership(MixedPattern::point({0.4, 0.7}, {}), b, params) == 0.0);
}

TEST_CASE("stored categorical probabilities sum to one") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        auto [counter, values] = testsupport::random_counter(rng);
        double sum = 0.0;
        for (const auto& [value, count] : counter.counts())
            sum += categorical_probability(value, counter);
        REQUIRE_THAT(sum, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("mixed membership stays in [0,1] and hits 1 only on a full match") {
    std::mt19937_64 rng(17);
    testsupport::StreamSpec spec{.continuous = 2, .categorical = 2,
                                 .classes = 1, .alphabet = 3, .intervals = true};
    HyperParams params;
    params.alpha = 0.37;
    for (int trial = 0; trial < 2000; ++trial) {
        Hyperbox b = create_point_hyperbox(testsupport::random_pattern(rng, spec), 0);
        for (int k = testsupport::randint(rng, 0, 4); k > 0; --k)
            absorb_pattern(b, testsupport::random_pattern(rng, spec));
        MixedPattern x = testsupport::random_pattern(rng, spec);
        double m = mixed_membership(x, b, params);
        REQUIRE(m >= 0.0);
        REQUIRE(m <= 1.0);

        bool numeric_full = numeric_membership(x, b, params) == 1.0;
        bool cats_full = true;
        for (std::size_t j = 0; j < x.cats.size(); ++j)
            cats_full = cats_full &&
                        categorical_probability(x.cats[j], b.categories[j]) == 1.0;
        REQUIRE((m == 1.0) == (numeric_full && cats_full));
    }
}

TEST_CASE("enlarging a box never lowers numeric membership") {
    std::mt19937_64 rng(19);
    testsupport::StreamSpec spec{.continuous = 3, .categorical = 0,
                                 .classes = 1, .intervals = true};
    HyperParams params;
    for (int trial = 0; trial < 500; ++trial) {
        Hyperbox b = create_point_hyperbox(testsupport::random_pattern(rng, spec), 0);
        MixedPattern probe = testsupport::random_pattern(rng, spec);
        double before = numeric_membership(probe, b, params);
        absorb_pattern(b, testsupport::random_pattern(rng, spec));
        REQUIRE(numeric_membership(probe, b, params) >= before);
    }
}

TEST_CASE("averaging keeps one unseen categorical value from zeroing the rest") {
    // Two categorical attributes; the pattern matches attribute 0 exactly and
    // carries a never-seen value on attribute 1.
    Hyperbox b = create_point_hyperbox(MixedPattern::point({}, {0, 0}, 0), 0);
    MixedPattern x = MixedPattern::point({}, {0, 99});
    HyperParams params;
    params.alpha = 0.0;
    CHECK(mixed_membership(x, b, params) > 0.0);
    CHECK(mixed_membership(x, b, params) == 0.5);
}
