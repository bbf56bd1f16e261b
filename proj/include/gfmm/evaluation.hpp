#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gfmm/io.hpp"
#include "gfmm/learner.hpp"
#include "gfmm/metrics.hpp"
#include "gfmm/model.hpp"
#include "gfmm/predictor.hpp"
#include "gfmm/splits.hpp"

namespace gfmm {

/// Fixed trade-off weight n/(n+r): every feature contributes equally.
inline double fixed_alpha(std::size_t continuous_count, std::size_t categorical_count) {
    if (continuous_count + categorical_count == 0)
        throw DataError("fixed alpha undefined without features");
    return static_cast<double>(continuous_count) /
           static_cast<double>(continuous_count + categorical_count);
}

/// Alpha estimate weighting the per-fold CBA scores of the numeric-only and
/// categorical-only models by their feature counts.
inline double estimate_alpha_v1(std::span<const double> cba_numeric,
                                std::span<const double> cba_categorical,
                                std::size_t continuous_count,
                                std::size_t categorical_count) {
    double num = 0.0;
    for (double v : cba_numeric) num += v * static_cast<double>(continuous_count);
    double cat = 0.0;
    for (double v : cba_categorical) cat += v * static_cast<double>(categorical_count);
    if (num + cat == 0.0) throw DataError("alpha estimate undefined: all CBA scores are zero");
    return num / (num + cat);
}

/// Alpha estimate from the CBA scores alone.
inline double estimate_alpha_v2(std::span<const double> cba_numeric,
                                std::span<const double> cba_categorical) {
    double num = 0.0;
    for (double v : cba_numeric) num += v;
    double cat = 0.0;
    for (double v : cba_categorical) cat += v;
    if (num + cat == 0.0) throw DataError("alpha estimate undefined: all CBA scores are zero");
    return num / (num + cat);
}

/// CBA of a trained model over a labeled test set. The confusion matrix
/// spans every class present among the truths and the predictions.
inline double evaluate_cba(const GfmmModel& model, std::span<const MixedPattern> test) {
    if (test.empty()) throw DataError("cannot evaluate on an empty test set");
    std::vector<Prediction> predictions = predict_batch(model, test);
    std::set<int> classes;
    for (const MixedPattern& p : test) {
        if (!p.label) throw DataError("test pattern without a label");
        classes.insert(*p.label);
    }
    for (const Prediction& p : predictions) classes.insert(p.label);
    ConfusionMatrix cm(std::vector<int>(classes.begin(), classes.end()));
    for (std::size_t i = 0; i < test.size(); ++i)
        cm.add(*test[i].label, predictions[i].label);
    return cba(cm);
}

namespace detail {

inline FeatureSchema mask_schema(const FeatureSchema& schema, bool keep_continuous,
                                 bool keep_categorical) {
    std::vector<Column> columns;
    for (const Column& col : schema.columns()) {
        switch (col.kind) {
            case ColumnKind::Continuous:
                if (keep_continuous) columns.push_back(col);
                break;
            case ColumnKind::Categorical:
                if (keep_categorical) columns.push_back(col);
                break;
            case ColumnKind::Class:
                columns.push_back(col);
                break;
            case ColumnKind::Ignore:
                break;
        }
    }
    return FeatureSchema(std::move(columns));
}

inline Vocabulary mask_vocab(const Vocabulary& vocab, bool keep_categorical) {
    Vocabulary masked(0);
    if (keep_categorical) masked.attributes = vocab.attributes;
    masked.labels = vocab.labels;
    return masked;
}

inline MixedPattern mask_pattern(const MixedPattern& p, bool keep_continuous,
                                 bool keep_categorical) {
    MixedPattern out;
    if (keep_continuous) {
        out.lower = p.lower;
        out.upper = p.upper;
    }
    if (keep_categorical) out.cats = p.cats;
    out.label = p.label;
    return out;
}

inline std::vector<MixedPattern> mask_patterns(std::span<const MixedPattern> ps,
                                               std::vector<std::size_t> const& indices,
                                               bool keep_continuous, bool keep_categorical) {
    std::vector<MixedPattern> out;
    out.reserve(indices.size());
    for (std::size_t i : indices)
        out.push_back(mask_pattern(ps[i], keep_continuous, keep_categorical));
    return out;
}

inline std::vector<int> labels_of(std::span<const MixedPattern> patterns) {
    std::vector<int> labels;
    labels.reserve(patterns.size());
    for (const MixedPattern& p : patterns) {
        if (!p.label) throw DataError("pattern without a label");
        labels.push_back(*p.label);
    }
    return labels;
}

/// Trains one model on `train` and scores CBA on `validation`.
inline double train_and_score(const FeatureSchema& schema, const Vocabulary& vocab,
                              const HyperParams& params,
                              std::span<const MixedPattern> train,
                              std::span<const MixedPattern> validation) {
    GfmmModel model = make_model(schema, vocab, params);
    fit_stream(model, train);
    return evaluate_cba(model, validation);
}

}  // namespace detail

enum class AlphaEstimator { V1, V2 };

/// Data-driven alpha estimate for one training fold: over three inner
/// splits, train a numeric-only model (alpha = 1) and a categorical-only
/// model (alpha = 0) on the inner training part, score both on the inner
/// validation fold, and combine the six CBA values.
inline double run_alpha_estimation(std::span<const MixedPattern> train_fold,
                                   const FeatureSchema& schema, const Vocabulary& vocab,
                                   const HyperParams& base, AlphaEstimator method,
                                   std::uint64_t seed) {
    const std::size_t n = schema.continuous_count();
    const std::size_t r = schema.categorical_count();
    if (n == 0 || r == 0)
        throw DataError("estimation undefined: needs both continuous and categorical features");

    FeatureSchema numeric_schema = detail::mask_schema(schema, true, false);
    FeatureSchema categorical_schema = detail::mask_schema(schema, false, true);
    Vocabulary numeric_vocab = detail::mask_vocab(vocab, false);
    Vocabulary categorical_vocab = detail::mask_vocab(vocab, true);
    HyperParams numeric_params = base;
    numeric_params.alpha = 1.0;
    HyperParams categorical_params = base;
    categorical_params.alpha = 0.0;
    categorical_params.gamma = {1.0};

    std::vector<int> labels = detail::labels_of(train_fold);
    std::vector<Split> splits = stratified_repeated_kfold(labels, CvPlan{1, 3, seed});

    std::vector<double> cba_numeric, cba_categorical;
    for (const Split& split : splits) {
        auto num_train = detail::mask_patterns(train_fold, split.train, true, false);
        auto num_val = detail::mask_patterns(train_fold, split.test, true, false);
        cba_numeric.push_back(detail::train_and_score(numeric_schema, numeric_vocab,
                                                      numeric_params, num_train, num_val));
        auto cat_train = detail::mask_patterns(train_fold, split.train, false, true);
        auto cat_val = detail::mask_patterns(train_fold, split.test, false, true);
        cba_categorical.push_back(detail::train_and_score(
            categorical_schema, categorical_vocab, categorical_params, cat_train, cat_val));
    }

    return method == AlphaEstimator::V1
               ? estimate_alpha_v1(cba_numeric, cba_categorical, n, r)
               : estimate_alpha_v2(cba_numeric, cba_categorical);
}

/// Exhaustive grid search over theta x delta x alpha using stratified inner
/// folds; returns the combination with the best mean validation CBA. Ties
/// prefer smaller theta, then smaller delta, then alpha closest to n/(n+r),
/// then smaller alpha. Grid combinations incompatible with a degenerate
/// schema (no categorical or no continuous features) are skipped.
inline HyperParams tune_grid(std::span<const MixedPattern> train_fold,
                             const FeatureSchema& schema, const Vocabulary& vocab,
                             const HyperParams& base, std::span<const double> theta_grid,
                             std::span<const double> delta_grid,
                             std::span<const double> alpha_grid, int inner_folds,
                             std::uint64_t seed) {
    if (theta_grid.empty() || delta_grid.empty() || alpha_grid.empty())
        throw DataError("tuning grids must be non-empty");
    const std::size_t n = schema.continuous_count();
    const std::size_t r = schema.categorical_count();
    const double alpha_anchor = fixed_alpha(n, r);

    std::vector<int> labels = detail::labels_of(train_fold);
    std::vector<Split> splits =
        stratified_repeated_kfold(labels, CvPlan{1, inner_folds, seed});
    std::vector<std::vector<MixedPattern>> train_parts, val_parts;
    for (const Split& split : splits) {
        train_parts.push_back(detail::mask_patterns(train_fold, split.train, true, true));
        val_parts.push_back(detail::mask_patterns(train_fold, split.test, true, true));
    }

    bool found = false;
    HyperParams best = base;
    double best_score = -1.0;
    for (double theta : theta_grid) {
        for (double delta : delta_grid) {
            for (double alpha : alpha_grid) {
                if ((r == 0 && alpha != 1.0) || (n == 0 && alpha != 0.0)) continue;
                HyperParams params = base;
                params.theta = theta;
                params.delta = delta;
                params.alpha = alpha;
                double sum = 0.0;
                for (std::size_t f = 0; f < splits.size(); ++f)
                    sum += detail::train_and_score(schema, vocab, params, train_parts[f],
                                                   val_parts[f]);
                double score = sum / static_cast<double>(splits.size());
                bool better = !found || score > best_score;
                if (found && score == best_score) {
                    auto key = [&](const HyperParams& p) {
                        return std::make_tuple(p.theta, p.delta,
                                               std::fabs(p.alpha - alpha_anchor), p.alpha);
                    };
                    better = key(params) < key(best);
                }
                if (better) {
                    best = params;
                    best_score = score;
                    found = true;
                }
            }
        }
    }
    if (!found) throw DataError("no tuning grid combination is valid for this schema");
    return best;
}

/// How the per-fold alpha is chosen during cross-validation.
struct AlphaSpec {
    enum class Policy { Fixed, Auto, EstimateV1, EstimateV2, Tune } policy = Policy::Auto;
    double value = 1.0;  // for Policy::Fixed

    static AlphaSpec fixed(double v) { return {Policy::Fixed, v}; }
};

struct CvResult {
    /// One CBA per (repeat, fold), repeat-major.
    std::vector<double> fold_cba;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Alpha values searched by the Tune policy.
inline const std::vector<double>& alpha_tuning_grid() {
    static const std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                          0.6, 0.7, 0.8, 0.9, 1.0};
    return grid;
}

/// Repeated stratified cross-validation over raw (unnormalized) rows. Each
/// split fits a min-max scaler on its training fold only, trains a fresh
/// model single-pass in file order, and scores CBA on the test fold.
/// `observer`, when set, sees every split with its fitted scaler.
inline CvResult run_cv(
    std::span<const RawRow> rows, const FeatureSchema& schema, const Vocabulary& vocab,
    const HyperParams& base, const AlphaSpec& alpha, const CvPlan& plan,
    const std::function<void(std::size_t, const Split&, const Scaler&)>& observer = {}) {
    std::vector<int> labels;
    labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].label)
            throw DataError("row " + std::to_string(i) + " has no class label");
        labels.push_back(*rows[i].label);
    }

    std::vector<Split> splits = stratified_repeated_kfold(labels, plan);
    CvResult result;
    result.fold_cba.reserve(splits.size());

    for (std::size_t s = 0; s < splits.size(); ++s) {
        const Split& split = splits[s];
        std::vector<RawRow> train_rows;
        train_rows.reserve(split.train.size());
        for (std::size_t i : split.train) train_rows.push_back(rows[i]);

        Scaler scaler = Scaler::fit(train_rows, schema);
        if (observer) observer(s, split, scaler);

        std::vector<MixedPattern> train, test;
        train.reserve(split.train.size());
        for (const RawRow& row : train_rows) train.push_back(scaler.apply(row));
        test.reserve(split.test.size());
        for (std::size_t i : split.test) test.push_back(scaler.apply(rows[i]));

        HyperParams params = base;
        switch (alpha.policy) {
            case AlphaSpec::Policy::Fixed:
                params.alpha = alpha.value;
                break;
            case AlphaSpec::Policy::Auto:
                params.alpha = fixed_alpha(schema.continuous_count(),
                                           schema.categorical_count());
                break;
            case AlphaSpec::Policy::EstimateV1:
            case AlphaSpec::Policy::EstimateV2:
                params.alpha = run_alpha_estimation(
                    train, schema, vocab, base,
                    alpha.policy == AlphaSpec::Policy::EstimateV1 ? AlphaEstimator::V1
                                                                  : AlphaEstimator::V2,
                    mix_seed(plan.seed, s));
                break;
            case AlphaSpec::Policy::Tune: {
                const double theta_grid[] = {base.theta};
                const double delta_grid[] = {base.delta};
                params = tune_grid(train, schema, vocab, base, theta_grid, delta_grid,
                                   alpha_tuning_grid(), 3, mix_seed(plan.seed, s));
                break;
            }
        }

        GfmmModel model = make_model(schema, vocab, params);
        fit_stream(model, train);
        result.fold_cba.push_back(evaluate_cba(model, test));
    }

    double sum = 0.0;
    for (double v : result.fold_cba) sum += v;
    result.mean = sum / static_cast<double>(result.fold_cba.size());
    if (result.fold_cba.size() > 1) {
        double ss = 0.0;
        for (double v : result.fold_cba) ss += (v - result.mean) * (v - result.mean);
        result.stddev = std::sqrt(ss / static_cast<double>(result.fold_cba.size() - 1));
    }
    return result;
}

}  // namespace gfmm
