#include <catch2/catch_amalgamated.hpp>

#include "gfmm/gfmm.hpp"
#include "testing_support.hpp"

using namespace gfmm;

TEST_CASE("feature schema validates its column declarations") {
    std::vector<Column> ok = {{"x", ColumnKind::Continuous, {}},
                              {"d", ColumnKind::Categorical, {}},
                              {"y", ColumnKind::Class, {}}};
    FeatureSchema schema(ok);
    CHECK(schema.continuous_count() == 1);
    CHECK(schema.categorical_count() == 1);
    CHECK(schema.class_column() == 2);

    CHECK_THROWS_AS(FeatureSchema({{"x", ColumnKind::Continuous, {}}}), DataError);
    CHECK_THROWS_AS(FeatureSchema({{"a", ColumnKind::Class, {}},
                                   {"b", ColumnKind::Class, {}},
                                   {"x", ColumnKind::Continuous, {}}}),
                    DataError);
    CHECK_THROWS_AS(FeatureSchema({{"y", ColumnKind::Class, {}}}), DataError);
    CHECK_THROWS_AS(
        FeatureSchema({{"x", ColumnKind::Continuous, {{2.0, 1.0}}},
                       {"y", ColumnKind::Class, {}}}),
        DataError);
}

TEST_CASE("interner hands out dense ids in first-encounter order") {
    Interner interner;
    CHECK(interner.intern("red") == 0);
    CHECK(interner.intern("blue") == 1);
    CHECK(interner.intern("red") == 0);
    CHECK(interner.find("blue") == 1);
    CHECK_FALSE(interner.find("green").has_value());
    CHECK(interner.name(1) == "blue");
    CHECK_THROWS_AS(interner.name(7), DataError);
}

TEST_CASE("create_point_hyperbox seeds a degenerate box") {
    MixedPattern x = MixedPattern::point({0.3}, {0}, 0);
    Hyperbox b = create_point_hyperbox(x, 5);
    CHECK(b.min_point == std::vector<double>{0.3});
    CHECK(b.max_point == std::vector<double>{0.3});
    CHECK(b.categories[0].count(0) == 1);
    CHECK(b.label == 0);
    CHECK(b.sample_count == 1);
    CHECK(b.created_seq == 5);
}

TEST_CASE("create_point_hyperbox keeps interval inputs as-is") {
    MixedPattern x;
    x.lower = {0.1, 0.2};
    x.upper = {0.4, 0.2};
    x.cats = {0, 1};
    x.label = 1;
    Hyperbox b = create_point_hyperbox(x, 0);
    CHECK(b.min_point == std::vector<double>{0.1, 0.2});
    CHECK(b.max_point == std::vector<double>{0.4, 0.2});
    CHECK(b.categories[0].count(0) == 1);
    CHECK(b.categories[1].count(1) == 1);
}

TEST_CASE("create_point_hyperbox rejects unlabeled patterns") {
    MixedPattern x = MixedPattern::point({0.3}, {0});
    CHECK_THROWS_WITH(create_point_hyperbox(x, 0),
                      "unlabeled pattern cannot seed a hyperbox");
}

TEST_CASE("absorb_pattern expands bounds and counts") {
    Hyperbox b = create_point_hyperbox(MixedPattern::point({0.2}, {}, 0), 0);
    absorb_pattern(b, MixedPattern::point({0.6}, {}, 0));
    absorb_pattern(b, MixedPattern::point({0.7}, {}, 0));
    CHECK(b.min_point == std::vector<double>{0.2});
    CHECK(b.max_point == std::vector<double>{0.7});
    CHECK(b.sample_count == 3);
}

TEST_CASE("absorb_pattern updates category counters") {
    // Box holding {apple:5, orange:1} on its single categorical attribute.
    const int apple = 0, orange = 1, banana = 2;
    Hyperbox b = create_point_hyperbox(MixedPattern::point({}, {apple}, 0), 0);
    for (int i = 0; i < 4; ++i) absorb_pattern(b, MixedPattern::point({}, {apple}, 0));
    absorb_pattern(b, MixedPattern::point({}, {orange}, 0));
    REQUIRE(b.sample_count == 6);
    REQUIRE(b.categories[0].count(apple) == 5);
    REQUIRE(b.categories[0].count(orange) == 1);

    SECTION("a new value is inserted at count 1") {
        absorb_pattern(b, MixedPattern::point({}, {banana}, 0));
        CHECK(b.categories[0].count(apple) == 5);
        CHECK(b.categories[0].count(orange) == 1);
        CHECK(b.categories[0].count(banana) == 1);
        CHECK(b.sample_count == 7);
    }
    SECTION("an existing value is incremented") {
        absorb_pattern(b, MixedPattern::point({}, {apple}, 0));
        CHECK(b.categories[0].count(apple) == 6);
        CHECK(b.categories[0].count(orange) == 1);
    }
}

TEST_CASE("absorb_pattern rejects label mismatches") {
    Hyperbox b = create_point_hyperbox(MixedPattern::point({0.2}, {}, 0), 0);
    CHECK_THROWS_AS(absorb_pattern(b, MixedPattern::point({0.3}, {}, 1)), DataError);
    CHECK_THROWS_AS(absorb_pattern(b, MixedPattern::point({0.3}, {})), DataError);
}

TEST_CASE("snapshot and restore is plain value copy and round-trips exactly") {
    std::mt19937_64 rng(7);
    testsupport::StreamSpec spec{.continuous = 3, .categorical = 2, .count = 1};
    MixedPattern x = testsupport::random_pattern(rng, spec);
    x.label = 0;
    Hyperbox b = create_point_hyperbox(x, 3);

    Hyperbox snapshot = b;
    CHECK(snapshot == b);

    Hyperbox snapshot2 = b;
    CHECK(snapshot == snapshot2);

    MixedPattern y = testsupport::random_pattern(rng, spec);
    y.label = 0;
    absorb_pattern(b, y);
    CHECK(b != snapshot);
    b = snapshot;
    CHECK(b == snapshot);
}

TEST_CASE("absorbing never shrinks a box and keeps counter totals in sync") {
    std::mt19937_64 rng(11);
    testsupport::StreamSpec spec{.continuous = 2, .categorical = 3,
                                 .classes = 1, .count = 1, .intervals = true};
    for (int trial = 0; trial < 200; ++trial) {
        Hyperbox b = create_point_hyperbox(testsupport::random_pattern(rng, spec), 0);
        for (int step = 0; step < 20; ++step) {
            Hyperbox before = b;
            absorb_pattern(b, testsupport::random_pattern(rng, spec));
            for (std::size_t j = 0; j < b.min_point.size(); ++j) {
                REQUIRE(b.min_point[j] <= before.min_point[j]);
                REQUIRE(b.max_point[j] >= before.max_point[j]);
            }
            for (const CategoryCounter& c : b.categories)
                REQUIRE(c.total() == b.sample_count);
        }
    }
}

TEST_CASE("hyper-parameter validation enforces ranges and degenerate alpha") {
    HyperParams p;
    validate_params(p, 2, 2);

    p.alpha = 0.5;
    validate_params(p, 2, 2);
    CHECK_THROWS_AS(validate_params(p, 2, 0), DataError);  // r = 0 forces alpha = 1
    CHECK_THROWS_AS(validate_params(p, 0, 2), DataError);  // n = 0 forces alpha = 0

    p.alpha = 1.0;
    validate_params(p, 2, 0);
    p.alpha = 0.0;
    validate_params(p, 0, 2);

    p = HyperParams{};
    p.theta = 0.0;
    CHECK_THROWS_AS(validate_params(p, 2, 2), DataError);
    p = HyperParams{};
    p.delta = 1.5;
    CHECK_THROWS_AS(validate_params(p, 2, 2), DataError);
    p = HyperParams{};
    p.gamma = {1.0, -2.0};
    CHECK_THROWS_AS(validate_params(p, 2, 2), DataError);
    p.gamma = {1.0, 2.0};
    validate_params(p, 2, 2);
    CHECK_THROWS_AS(validate_params(p, 3, 2), DataError);  // gamma arity
}

TEST_CASE("make_model checks vocabulary arity") {
    testsupport::StreamSpec spec{.continuous = 1, .categorical = 2};
    FeatureSchema schema = testsupport::schema_for(spec);
    HyperParams params;
    params.alpha = 0.5;
    CHECK_THROWS_AS(make_model(schema, Vocabulary(1), params), DataError);
    GfmmModel m = make_model(schema, Vocabulary(2), params);
    CHECK(m.boxes.empty());
}
