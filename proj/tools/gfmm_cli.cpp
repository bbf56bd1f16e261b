// gfmm: command line front end for the mixed-attribute fuzzy min-max
// classifier. Subcommands: fit, predict, cv, tune, estimate-alpha, stats,
// inspect. Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric
// failure. Results go to stdout (or --out); diagnostics to stderr.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfmm/gfmm.hpp"

namespace {

using namespace gfmm;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LoadedData {
    FeatureSchema schema;
    Vocabulary vocab;
    Dataset dataset;
};

LoadedData load_inputs(const std::string& data_path, const std::string& schema_path,
                       bool require_labels) {
    FeatureSchema schema = load_schema(schema_path);
    Vocabulary vocab(schema.categorical_count());
    Dataset dataset = load_dataset(data_path, schema, vocab, require_labels);
    if (dataset.rows.empty()) throw DataError(data_path + ": no data rows");
    return {std::move(schema), std::move(vocab), std::move(dataset)};
}

AlphaSpec parse_alpha(const std::string& text, bool allow_policies) {
    if (text == "auto") return AlphaSpec{AlphaSpec::Policy::Auto, 1.0};
    if (allow_policies) {
        if (text == "est-v1") return AlphaSpec{AlphaSpec::Policy::EstimateV1, 1.0};
        if (text == "est-v2") return AlphaSpec{AlphaSpec::Policy::EstimateV2, 1.0};
        if (text == "tune") return AlphaSpec{AlphaSpec::Policy::Tune, 1.0};
    }
    try {
        return AlphaSpec::fixed(detail::parse_double(text, "--alpha"));
    } catch (const DataError&) {
        throw UsageError("--alpha expects a number" +
                         std::string(allow_policies
                                         ? ", auto, est-v1, est-v2, or tune"
                                         : " or auto"));
    }
}

/// stdout unless --out was given.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw DataError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// --- fit ---------------------------------------------------------------

struct FitArgs {
    std::string data, schema, model_out;
    double theta = 1.0, delta = 1.0, gamma = 1.0;
    std::string alpha = "auto";
    std::string variant = "v1";
    std::optional<std::uint64_t> shuffle_seed;
};

void run_fit(const FitArgs& args) {
    LoadedData in = load_inputs(args.data, args.schema, /*require_labels=*/true);

    HyperParams params;
    params.theta = args.theta;
    params.delta = args.delta;
    params.gamma = {args.gamma};
    params.variant = variant_from_string(args.variant);
    AlphaSpec alpha = parse_alpha(args.alpha, /*allow_policies=*/false);
    params.alpha = alpha.policy == AlphaSpec::Policy::Auto
                       ? fixed_alpha(in.schema.continuous_count(),
                                     in.schema.categorical_count())
                       : alpha.value;

    Scaler scaler = Scaler::fit(in.dataset.rows, in.schema);
    std::vector<MixedPattern> patterns;
    patterns.reserve(in.dataset.rows.size());
    for (const RawRow& row : in.dataset.rows) patterns.push_back(scaler.apply(row));

    if (args.shuffle_seed) {
        std::vector<std::size_t> order(patterns.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::mt19937_64 rng(*args.shuffle_seed);
        deterministic_shuffle(order, rng);
        std::vector<MixedPattern> shuffled;
        shuffled.reserve(patterns.size());
        for (std::size_t i : order) shuffled.push_back(std::move(patterns[i]));
        patterns = std::move(shuffled);
    }

    GfmmModel model = make_model(in.schema, in.vocab, params);
    FitReport report = fit_stream(model, patterns);
    save_model(model, scaler, args.model_out);

    std::cerr << "trained " << patterns.size() << " patterns -> " << model.boxes.size()
              << " hyperboxes (expansions " << report.expansions << ", containments "
              << report.containments << ", overlap rejections "
              << report.overlap_rejections << ")\n";
}

// --- predict -----------------------------------------------------------

struct PredictArgs {
    std::string model, data, out;
};

void run_predict(const PredictArgs& args) {
    SavedModel saved = load_model(args.model);
    Vocabulary vocab = saved.model.vocab;  // queries may intern unseen values
    Dataset dataset = load_dataset(args.data, saved.model.schema, vocab,
                                   /*require_labels=*/false);

    std::vector<MixedPattern> patterns;
    patterns.reserve(dataset.rows.size());
    for (const RawRow& row : dataset.rows) patterns.push_back(saved.scaler.apply(row));
    std::vector<Prediction> predictions = predict_batch(saved.model, patterns);

    OutputTarget out(args.out);
    for (std::size_t i = 0; i < dataset.column_names.size(); ++i)
        out.stream() << (i ? "," : "") << dataset.column_names[i];
    out.stream() << ",predicted,membership\n";
    for (std::size_t i = 0; i < predictions.size(); ++i)
        out.stream() << dataset.raw_lines[i] << ","
                     << saved.model.vocab.labels.name(predictions[i].label) << ","
                     << detail::format_double(predictions[i].winning_membership) << "\n";
}

// --- cv ----------------------------------------------------------------

struct CvArgs {
    std::string data, schema, out;
    int repeats = 10, folds = 4;
    std::uint64_t seed = 0;
    double theta = 1.0, delta = 1.0, gamma = 1.0;
    std::string alpha = "auto";
    std::string variant = "v1";
};

void run_cv_command(const CvArgs& args) {
    LoadedData in = load_inputs(args.data, args.schema, /*require_labels=*/true);

    HyperParams base;
    base.theta = args.theta;
    base.delta = args.delta;
    base.gamma = {args.gamma};
    base.variant = variant_from_string(args.variant);
    AlphaSpec alpha = parse_alpha(args.alpha, /*allow_policies=*/true);
    if (alpha.policy == AlphaSpec::Policy::Fixed || alpha.policy == AlphaSpec::Policy::Auto)
        base.alpha = alpha.policy == AlphaSpec::Policy::Auto
                         ? fixed_alpha(in.schema.continuous_count(),
                                       in.schema.categorical_count())
                         : alpha.value;
    else
        base.alpha = fixed_alpha(in.schema.continuous_count(),
                                 in.schema.categorical_count());

    CvPlan plan{args.repeats, args.folds, args.seed};
    CvResult result = run_cv(in.dataset.rows, in.schema, in.vocab, base, alpha, plan);

    ResultRow row;
    row.dataset = std::filesystem::path(args.data).stem().string();
    row.method = "eiol-gfmm-" + args.variant;
    row.theta = args.theta;
    row.delta = args.delta;
    row.alpha = args.alpha;
    row.gamma = detail::format_double(args.gamma);
    row.variant = args.variant;
    row.repeats = args.repeats;
    row.folds = args.folds;
    row.seed = args.seed;
    row.mean_cba = result.mean;
    row.std_cba = result.stddev;

    OutputTarget out(args.out);
    write_results_rows(out.stream(), std::vector{row}, /*with_header=*/true);
}

// --- tune --------------------------------------------------------------

struct TuneArgs {
    std::string data, schema;
    std::vector<double> grid_theta{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> grid_delta{0.1, 0.3, 0.5, 0.9, 1.0};
    std::vector<double> grid_alpha{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    int inner_folds = 3;
    std::uint64_t seed = 0;
    double gamma = 1.0;
    std::string variant = "v1";
};

void run_tune(const TuneArgs& args) {
    LoadedData in = load_inputs(args.data, args.schema, /*require_labels=*/true);

    HyperParams base;
    base.gamma = {args.gamma};
    base.variant = variant_from_string(args.variant);
    base.alpha = fixed_alpha(in.schema.continuous_count(), in.schema.categorical_count());

    Scaler scaler = Scaler::fit(in.dataset.rows, in.schema);
    std::vector<MixedPattern> patterns;
    patterns.reserve(in.dataset.rows.size());
    for (const RawRow& row : in.dataset.rows) patterns.push_back(scaler.apply(row));

    HyperParams best = tune_grid(patterns, in.schema, in.vocab, base, args.grid_theta,
                                 args.grid_delta, args.grid_alpha, args.inner_folds,
                                 args.seed);
    std::cout << "theta=" << detail::format_double(best.theta)
              << " delta=" << detail::format_double(best.delta)
              << " alpha=" << detail::format_double(best.alpha) << "\n";
}

// --- estimate-alpha ----------------------------------------------------

struct EstimateArgs {
    std::string data, schema, method;
    double theta = 1.0, delta = 1.0, gamma = 1.0;
    std::uint64_t seed = 0;
    std::string variant = "v1";
};

void run_estimate(const EstimateArgs& args) {
    if (args.method != "v1" && args.method != "v2")
        throw UsageError("--method expects v1 or v2");
    LoadedData in = load_inputs(args.data, args.schema, /*require_labels=*/true);

    HyperParams base;
    base.theta = args.theta;
    base.delta = args.delta;
    base.gamma = {args.gamma};
    base.variant = variant_from_string(args.variant);
    base.alpha = fixed_alpha(in.schema.continuous_count(), in.schema.categorical_count());

    Scaler scaler = Scaler::fit(in.dataset.rows, in.schema);
    std::vector<MixedPattern> patterns;
    patterns.reserve(in.dataset.rows.size());
    for (const RawRow& row : in.dataset.rows) patterns.push_back(scaler.apply(row));

    double estimate = run_alpha_estimation(
        patterns, in.schema, in.vocab, base,
        args.method == "v1" ? AlphaEstimator::V1 : AlphaEstimator::V2, args.seed);
    std::cout << detail::format_double(estimate) << "\n";
}

// --- stats friedman ------------------------------------------------------

struct FriedmanArgs {
    std::string table;
    double alpha = 0.05;
};

void run_friedman(const FriedmanArgs& args) {
    RankTable table = load_rank_table(args.table);
    std::vector<double> ranks = average_ranks(table, /*higher_is_better=*/true);
    const int datasets = static_cast<int>(table.datasets.size());
    const int methods = static_cast<int>(table.methods.size());

    double chi2 = friedman_chi2(ranks, datasets);
    double f_f = friedman_f(chi2, datasets, methods);
    double critical = f_critical(methods - 1, (methods - 1) * (datasets - 1), args.alpha);
    bool reject = friedman_reject(f_f, datasets, methods, args.alpha);
    double cd = nemenyi_critical_difference(methods, datasets, args.alpha);

    std::cout << "average ranks:";
    for (int m = 0; m < methods; ++m)
        std::cout << " " << table.methods[m] << "=" << detail::format_double(ranks[m]);
    std::cout << "\n";
    std::cout << "chi2_f=" << detail::format_double(chi2) << "\n";
    std::cout << "f_f=" << detail::format_double(f_f) << "\n";
    std::cout << "f_critical=" << detail::format_double(critical) << "\n";
    std::cout << "decision: " << (reject ? "reject" : "fail-to-reject") << "\n";
    std::cout << "nemenyi_cd=" << detail::format_double(cd) << "\n";
    std::cout << "cd groups:";
    for (const auto& group : critical_difference_groups(ranks, cd)) {
        std::cout << " {";
        for (std::size_t i = 0; i < group.size(); ++i)
            std::cout << (i ? ", " : "") << table.methods[group[i]];
        std::cout << "}";
    }
    std::cout << "\n";
}

// --- inspect -------------------------------------------------------------

struct InspectArgs {
    std::string model;
    bool summary = false;
};

void run_inspect(const InspectArgs& args) {
    SavedModel saved = load_model(args.model);
    const GfmmModel& model = saved.model;

    if (args.summary) {
        std::map<int, std::pair<std::int64_t, std::int64_t>> per_class;  // boxes, samples
        for (const Hyperbox& b : model.boxes) {
            per_class[b.label].first += 1;
            per_class[b.label].second += b.sample_count;
        }
        std::cout << "hyperboxes: " << model.boxes.size() << "\n";
        for (const auto& [label, counts] : per_class)
            std::cout << "class " << model.vocab.labels.name(label) << ": "
                      << counts.first << " boxes, " << counts.second << " samples\n";
        return;
    }

    for (const Hyperbox& b : model.boxes) {
        std::cout << "box seq=" << b.created_seq
                  << " label=" << model.vocab.labels.name(b.label) << " n=" << b.sample_count
                  << " V=[";
        for (std::size_t j = 0; j < b.min_point.size(); ++j)
            std::cout << (j ? "," : "") << detail::format_double(b.min_point[j]);
        std::cout << "] W=[";
        for (std::size_t j = 0; j < b.max_point.size(); ++j)
            std::cout << (j ? "," : "") << detail::format_double(b.max_point[j]);
        std::cout << "] D=[";
        for (std::size_t a = 0; a < b.categories.size(); ++a) {
            std::cout << (a ? "|" : "") << "{";
            bool first = true;
            for (const auto& [value, count] : b.categories[a].counts()) {
                std::cout << (first ? "" : ";") << model.vocab.attributes[a].name(value)
                          << "=" << count;
                first = false;
            }
            std::cout << "}";
        }
        std::cout << "]\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"General fuzzy min-max hyperbox classifier for mixed-attribute data"};
    app.require_subcommand(1);

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Train a model in a single online pass");
    fit->add_option("--data", fit_args.data, "Training CSV")->required();
    fit->add_option("--schema", fit_args.schema, "Schema file")->required();
    fit->add_option("--theta", fit_args.theta, "Maximum hyperbox size");
    fit->add_option("--delta", fit_args.delta, "Maximum entropy change");
    fit->add_option("--alpha", fit_args.alpha, "Trade-off weight or 'auto'");
    fit->add_option("--gamma", fit_args.gamma, "Membership sensitivity");
    fit->add_option("--variant", fit_args.variant, "v1 or v2");
    fit->add_option("--model-out", fit_args.model_out, "Output model path")->required();
    fit->add_option("--shuffle-seed", fit_args.shuffle_seed,
                    "Shuffle training order with this seed");

    PredictArgs predict_args;
    CLI::App* predict = app.add_subcommand("predict", "Classify rows with a trained model");
    predict->add_option("--model", predict_args.model, "Model path")->required();
    predict->add_option("--data", predict_args.data, "Query CSV")->required();
    predict->add_option("--out", predict_args.out, "Output CSV (default stdout)");

    CvArgs cv_args;
    CLI::App* cv = app.add_subcommand("cv", "Repeated stratified cross-validation");
    cv->add_option("--data", cv_args.data, "Dataset CSV")->required();
    cv->add_option("--schema", cv_args.schema, "Schema file")->required();
    cv->add_option("--repeats", cv_args.repeats, "Repeats");
    cv->add_option("--folds", cv_args.folds, "Folds");
    cv->add_option("--seed", cv_args.seed, "Split seed");
    cv->add_option("--theta", cv_args.theta, "Maximum hyperbox size");
    cv->add_option("--delta", cv_args.delta, "Maximum entropy change");
    cv->add_option("--alpha", cv_args.alpha,
                   "Number, auto, est-v1, est-v2, or tune");
    cv->add_option("--gamma", cv_args.gamma, "Membership sensitivity");
    cv->add_option("--variant", cv_args.variant, "v1 or v2");
    cv->add_option("--out", cv_args.out, "Results CSV (default stdout)");

    TuneArgs tune_args;
    CLI::App* tune = app.add_subcommand("tune", "Inner-fold grid search");
    tune->add_option("--data", tune_args.data, "Dataset CSV")->required();
    tune->add_option("--schema", tune_args.schema, "Schema file")->required();
    tune->add_option("--grid-theta", tune_args.grid_theta, "Theta grid")->delimiter(',');
    tune->add_option("--grid-delta", tune_args.grid_delta, "Delta grid")->delimiter(',');
    tune->add_option("--grid-alpha", tune_args.grid_alpha, "Alpha grid")->delimiter(',');
    tune->add_option("--inner-folds", tune_args.inner_folds, "Inner folds");
    tune->add_option("--seed", tune_args.seed, "Split seed");
    tune->add_option("--gamma", tune_args.gamma, "Membership sensitivity");
    tune->add_option("--variant", tune_args.variant, "v1 or v2");

    EstimateArgs estimate_args;
    CLI::App* estimate = app.add_subcommand("estimate-alpha",
                                            "Data-driven alpha estimation");
    estimate->add_option("--data", estimate_args.data, "Dataset CSV")->required();
    estimate->add_option("--schema", estimate_args.schema, "Schema file")->required();
    estimate->add_option("--method", estimate_args.method, "v1 or v2")->required();
    estimate->add_option("--theta", estimate_args.theta, "Maximum hyperbox size");
    estimate->add_option("--delta", estimate_args.delta, "Maximum entropy change");
    estimate->add_option("--gamma", estimate_args.gamma, "Membership sensitivity");
    estimate->add_option("--variant", estimate_args.variant, "v1 or v2");
    estimate->add_option("--seed", estimate_args.seed, "Split seed");

    FriedmanArgs friedman_args;
    CLI::App* stats = app.add_subcommand("stats", "Statistical comparisons");
    stats->require_subcommand(1);
    CLI::App* friedman = stats->add_subcommand("friedman",
                                               "Friedman test with Nemenyi post-hoc");
    friedman->add_option("--table", friedman_args.table, "Scores CSV (datasets x methods)")
        ->required();
    friedman->add_option("--alpha", friedman_args.alpha, "Significance level");

    InspectArgs inspect_args;
    CLI::App* inspect = app.add_subcommand("inspect", "Dump a trained model");
    inspect->add_option("--model", inspect_args.model, "Model path")->required();
    inspect->add_flag("--summary", inspect_args.summary, "Per-class counts only");

    fit->callback([&] { run_fit(fit_args); });
    predict->callback([&] { run_predict(predict_args); });
    cv->callback([&] { run_cv_command(cv_args); });
    tune->callback([&] { run_tune(tune_args); });
    estimate->callback([&] { run_estimate(estimate_args); });
    friedman->callback([&] { run_friedman(friedman_args); });
    inspect->callback([&] { run_inspect(inspect_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
