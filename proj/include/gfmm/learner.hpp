#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gfmm/entropy.hpp"
#include "gfmm/membership.hpp"
#include "gfmm/model.hpp"
#include "gfmm/overlap.hpp"

namespace gfmm {

struct FitReport {
    std::int64_t boxes_created = 0;
    std::int64_t expansions = 0;
    std::int64_t containments = 0;
    std::int64_t overlap_rejections = 0;

    FitReport& operator+=(const FitReport& other) {
        boxes_created += other.boxes_created;
        expansions += other.expansions;
        containments += other.containments;
        overlap_rejections += other.overlap_rejections;
        return *this;
    }

    bool operator==(const FitReport&) const = default;
};

enum class FitAction { Created, Expanded, Contained };

struct FitOutcome {
    FitAction action = FitAction::Created;
    /// Index of the box that was created, expanded, or had its counts updated.
    std::size_t box_index = 0;
    FitReport report;
};

namespace detail {

/// Same-class candidate indices ordered by descending membership, ties by
/// creation order (older box first).
inline std::vector<std::size_t> ranked_candidates(const GfmmModel& model,
                                                  const MixedPattern& x,
                                                  std::vector<double>& memberships) {
    std::vector<std::size_t> candidates;
    memberships.assign(model.boxes.size(), 0.0);
    for (std::size_t i = 0; i < model.boxes.size(); ++i) {
        if (model.boxes[i].label != *x.label) continue;
        memberships[i] = mixed_membership(x, model.boxes[i], model.params);
        candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) {
                  if (memberships[a] != memberships[b])
                      return memberships[a] > memberships[b];
                  return model.boxes[a].created_seq < model.boxes[b].created_seq;
              });
    return candidates;
}

}  // namespace detail

/// One step of the single-pass online learning loop. Exactly one of three
/// things happens, in this order of preference:
///   - containment: the best same-class box already matches with membership
///     1; its statistics absorb the pattern (when `update_contained_counts`),
///     geometry is untouched.
///   - expansion: walking candidates by descending membership, the first box
///     that satisfies both the maximum-size and the entropy-change condition
///     is tentatively expanded; the expansion is kept only if the grown box
///     does not jointly overlap any box of another class, otherwise it is
///     reverted and the next candidate is tried.
///   - creation: a new point-sized box covering just this pattern.
inline FitOutcome fit_one(GfmmModel& model, const MixedPattern& x,
                          bool update_contained_counts = true) {
    if (!x.label) throw DataError("unlabeled pattern cannot seed a hyperbox");
    validate_pattern(x, model.continuous_count(), model.categorical_count());

    FitOutcome outcome;
    std::vector<double> memberships;
    std::vector<std::size_t> candidates = detail::ranked_candidates(model, x, memberships);

    if (!candidates.empty() && memberships[candidates.front()] == 1.0) {
        std::size_t winner = candidates.front();
        if (update_contained_counts) absorb_counts(model.boxes[winner], x);
        outcome.action = FitAction::Contained;
        outcome.box_index = winner;
        outcome.report.containments = 1;
        return outcome;
    }

    for (std::size_t idx : candidates) {
        Hyperbox& box = model.boxes[idx];
        if (!numeric_expansion_admissible(box, x, model.params.theta)) continue;
        if (!categorical_expansion_admissible(box, x, model.params.delta,
                                              model.params.variant).admissible)
            continue;
        Hyperbox saved = box;
        absorb_pattern(box, x);
        if (joint_overlap_with_other_classes(model, box)) {
            box = saved;
            ++outcome.report.overlap_rejections;
            continue;
        }
        outcome.action = FitAction::Expanded;
        outcome.box_index = idx;
        outcome.report.expansions = 1;
        return outcome;
    }

    model.boxes.push_back(create_point_hyperbox(x, model.next_seq++));
    outcome.action = FitAction::Created;
    outcome.box_index = model.boxes.size() - 1;
    outcome.report.boxes_created = 1;
    return outcome;
}

/// Folds fit_one over the patterns in order. The result is order-dependent
/// by construction; replaying the same sequence into a fresh model gives an
/// identical model.
inline FitReport fit_stream(GfmmModel& model, std::span<const MixedPattern> patterns,
                            bool update_contained_counts = true) {
    FitReport report;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        try {
            report += fit_one(model, patterns[i], update_contained_counts).report;
        } catch (const DataError& e) {
            throw DataError("pattern " + std::to_string(i) + ": " + e.what());
        }
    }
    return report;
}

}  // namespace gfmm
