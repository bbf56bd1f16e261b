#include <catch2/catch_amalgamated.hpp>

#include "gfmm/gfmm.hpp"
#include "testing_support.hpp"

using namespace gfmm;
using Catch::Matchers::WithinAbs;

namespace {

/// 1-D numeric model with boxes placed so a probe at 0.2 ties both classes
/// at membership 0.9.
GfmmModel tie_model(std::int64_t n_first, std::int64_t n_second) {
    testsupport::StreamSpec spec{.continuous = 1, .categorical = 0, .classes = 2};
    GfmmModel model = testsupport::model_for(spec, HyperParams{});
    Hyperbox a;
    a.min_point = {0.0};
    a.max_point = {0.1};
    a.label = 0;
    a.sample_count = n_first;
    a.created_seq = 0;
    Hyperbox b;
    b.min_point = {0.3};
    b.max_point = {0.4};
    b.label = 1;
    b.sample_count = n_second;
    b.created_seq = 1;
    model.boxes = {a, b};
    model.next_seq = 2;
    return model;
}

}  // namespace

TEST_CASE("a single-box model predicts that box's class") {
    testsupport::StreamSpec spec{.continuous = 1, .categorical = 1, .classes = 2};
    HyperParams params;
    params.alpha = 0.5;
    GfmmModel model = testsupport::model_for(spec, params);
    fit_one(model, MixedPattern::point({0.5}, {0}, 1));

    Prediction p = predict(model, MixedPattern::point({0.9}, {1}));
    CHECK(p.label == 1);
    CHECK_FALSE(p.tie_broken);
    CHECK(p.per_class_scores.at(1) == 1.0);
}

TEST_CASE("ties between classes are broken by cardinality-weighted membership") {
    GfmmModel model = tie_model(5, 3);
    Prediction p = predict(model, MixedPattern::point({0.2}, {}));
    CHECK_THAT(p.winning_membership, WithinAbs(0.9, 1e-12));
    CHECK(p.tie_broken);
    CHECK_THAT(p.per_class_scores.at(0), WithinAbs(0.625, 1e-12));
    CHECK_THAT(p.per_class_scores.at(1), WithinAbs(0.375, 1e-12));
    CHECK(p.label == 0);
}

TEST_CASE("tied scores sum to one and scale-free in the cardinalities") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t na = testsupport::randint(rng, 1, 50);
        std::int64_t nb = testsupport::randint(rng, 1, 50);
        GfmmModel model = tie_model(na, nb);
        Prediction p = predict(model, MixedPattern::point({0.2}, {}));
        double sum = 0.0;
        for (const auto& [label, score] : p.per_class_scores) sum += score;
        REQUIRE_THAT(sum, WithinAbs(1.0, 1e-12));

        // Multiplying every cardinality by a common factor moves no label.
        int k = testsupport::randint(rng, 2, 9);
        GfmmModel scaled = tie_model(na * k, nb * k);
        REQUIRE(predict(scaled, MixedPattern::point({0.2}, {})).label == p.label);
    }
}

TEST_CASE("exact score ties go to the lexicographically smallest class name") {
    // Label id 0 is "zebra", id 1 is "ant": the id order and the
    // lexicographic order disagree on purpose.
    testsupport::StreamSpec spec{.continuous = 1, .categorical = 0, .classes = 2};
    GfmmModel model = make_model(testsupport::schema_for(spec), Vocabulary(0),
                                 HyperParams{});
    model.vocab.labels.intern("zebra");
    model.vocab.labels.intern("ant");
    model = [&] {
        GfmmModel m = tie_model(4, 4);
        m.vocab = model.vocab;
        return m;
    }();
    Prediction p = predict(model, MixedPattern::point({0.2}, {}));
    CHECK(p.tie_broken);
    CHECK(p.per_class_scores.at(0) == p.per_class_scores.at(1));
    CHECK(model.vocab.labels.name(p.label) == "ant");
}

TEST_CASE("unseen categorical values contribute zero but leave predictions defined") {
    testsupport::StreamSpec spec{.continuous = 0, .categorical = 2, .classes = 2};
    HyperParams params;
    params.alpha = 0.0;
    GfmmModel model = testsupport::model_for(spec, params);
    fit_one(model, MixedPattern::point({}, {0, 0}, 0));
    fit_one(model, MixedPattern::point({}, {1, 1}, 1));

    Prediction p = predict(model, MixedPattern::point({}, {0, 99}));
    CHECK(p.label == 0);
    CHECK_THAT(p.winning_membership, WithinAbs(0.5, 1e-12));
}

TEST_CASE("predict is pure and batch equals the map of singles") {
    std::mt19937_64 rng(67);
    testsupport::StreamSpec spec{.continuous = 2, .categorical = 2, .count = 40};
    HyperParams params = testsupport::params_for(spec, 0.3, 0.5, 0.5, Variant::V1);
    GfmmModel model = testsupport::model_for(spec, params);
    fit_stream(model, testsupport::random_stream(rng, spec));

    std::vector<MixedPattern> queries;
    for (int i = 0; i < 20; ++i)
        queries.push_back(testsupport::random_pattern(rng, spec, false));

    std::vector<Prediction> batch = predict_batch(model, queries);
    REQUIRE(batch.size() == queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        REQUIRE(predict(model, queries[i]) == batch[i]);
        REQUIRE(predict(model, queries[i]) == batch[i]);  // repeated call identical
    }

    CHECK(predict_batch(model, std::vector<MixedPattern>{}).empty());
}

TEST_CASE("a query with zero membership everywhere still gets a defined label") {
    // Far-away boxes with a steep gamma: every membership is exactly 0, so
    // the tie covers all boxes and cardinality alone decides.
    testsupport::StreamSpec spec{.continuous = 1, .categorical = 0, .classes = 2};
    HyperParams params;
    params.gamma = {100.0};
    GfmmModel model = testsupport::model_for(spec, params);
    fit_one(model, MixedPattern::point({0.0}, {}, 0));
    fit_one(model, MixedPattern::point({0.02}, {}, 0));
    fit_one(model, MixedPattern::point({0.1}, {}, 1));

    Prediction p = predict(model, MixedPattern::point({0.9}, {}));
    CHECK(p.winning_membership == 0.0);
    CHECK(p.tie_broken);
    CHECK(p.label == 0);  // class 0 covers 2 of the 3 samples
    CHECK_THAT(p.per_class_scores.at(0), WithinAbs(2.0 / 3.0, 1e-12));
}

TEST_CASE("prediction on an empty model is an error") {
    testsupport::StreamSpec spec{.continuous = 1, .categorical = 0, .classes = 2};
    GfmmModel model = testsupport::model_for(spec, HyperParams{});
    CHECK_THROWS_WITH(predict(model, MixedPattern::point({0.5}, {})), "no hyperboxes");
}
