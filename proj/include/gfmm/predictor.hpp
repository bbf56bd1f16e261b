#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gfmm/membership.hpp"
#include "gfmm/model.hpp"

namespace gfmm {

struct Prediction {
    int label = -1;
    double winning_membership = 0.0;
    /// Cardinality-weighted scores of the classes tied at the winning
    /// membership; they sum to 1.
    std::map<int, double> per_class_scores;
    /// True when boxes of two or more classes tied at the winning membership.
    bool tie_broken = false;

    bool operator==(const Prediction&) const = default;
};

/// Classifies a pattern as the class of the best-matching hyperbox. When
/// boxes of several classes tie at the winning membership, the tie is broken
/// by the share of cardinality-weighted membership each class holds among
/// the tied boxes; a tie surviving even that goes to the lexicographically
/// smallest class name.
inline Prediction predict(const GfmmModel& model, const MixedPattern& x) {
    if (model.boxes.empty()) throw DataError("no hyperboxes");
    validate_pattern(x, model.continuous_count(), model.categorical_count());

    std::vector<double> memberships(model.boxes.size());
    double best = -1.0;
    for (std::size_t i = 0; i < model.boxes.size(); ++i) {
        memberships[i] = mixed_membership(x, model.boxes[i], model.params);
        if (memberships[i] > best) best = memberships[i];
    }

    // Winning set: exact equality is intended; tied boxes produced the same
    // value through the same computation.
    std::map<int, double> class_weights;
    double total_weight = 0.0;
    std::int64_t total_cardinality = 0;
    std::map<int, std::int64_t> class_cardinality;
    for (std::size_t i = 0; i < model.boxes.size(); ++i) {
        if (memberships[i] != best) continue;
        const Hyperbox& b = model.boxes[i];
        double w = static_cast<double>(b.sample_count) * memberships[i];
        class_weights[b.label] += w;
        total_weight += w;
        class_cardinality[b.label] += b.sample_count;
        total_cardinality += b.sample_count;
    }

    Prediction pred;
    pred.winning_membership = best;
    pred.tie_broken = class_weights.size() >= 2;
    // All tied memberships can be 0 (a pattern far from every box); fall
    // back to plain cardinality shares so the scores stay defined.
    if (total_weight > 0.0) {
        for (const auto& [label, w] : class_weights)
            pred.per_class_scores[label] = w / total_weight;
    } else {
        for (const auto& [label, c] : class_cardinality)
            pred.per_class_scores[label] =
                static_cast<double>(c) / static_cast<double>(total_cardinality);
    }

    bool first = true;
    double best_score = 0.0;
    for (const auto& [label, score] : pred.per_class_scores) {
        bool better = first || score > best_score ||
                      (score == best_score &&
                       model.vocab.labels.name(label) < model.vocab.labels.name(pred.label));
        if (better) {
            pred.label = label;
            best_score = score;
        }
        first = false;
    }
    return pred;
}

/// Elementwise predict, order preserved; a failing pattern is reported with
/// its index.
inline std::vector<Prediction> predict_batch(const GfmmModel& model,
                                             std::span<const MixedPattern> patterns) {
    std::vector<Prediction> out;
    out.reserve(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        try {
            out.push_back(predict(model, patterns[i]));
        } catch (const DataError& e) {
            throw DataError("pattern " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace gfmm
