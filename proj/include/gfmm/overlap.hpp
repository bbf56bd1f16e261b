#pragma once

#include <algorithm>
#include <cstdint>

#include "gfmm/hyperbox.hpp"
#include "gfmm/membership.hpp"
#include "gfmm/model.hpp"

namespace gfmm {

/// Gap-based similarity between two boxes on their continuous dimensions:
/// 1 exactly when the boxes overlap (touching counts), < 1 otherwise. With
/// no continuous dimensions every pair vacuously overlaps.
inline double overlap_numeric(const Hyperbox& a, const Hyperbox& b) {
    const std::size_t n = a.min_point.size();
    if (b.min_point.size() != n)
        throw DataError("hyperboxes disagree on continuous dimensions");
    double s = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double gap_ab = 1.0 - ramp(b.min_point[j] - a.max_point[j], 1.0);
        double gap_ba = 1.0 - ramp(a.min_point[j] - b.max_point[j], 1.0);
        s = std::min(s, std::min(gap_ab, gap_ba));
    }
    return s;
}

/// Categorical overlap: on every attribute the two boxes share a value AND
/// some shared value occurs with equal probability in both. Probabilities
/// are compared as exact rationals (cross-multiplied integer counts), so no
/// floating tolerance is involved. With no categorical attributes the test
/// is vacuously true.
inline bool overlap_categorical(const Hyperbox& a, const Hyperbox& b) {
    const std::size_t r = a.categories.size();
    if (b.categories.size() != r)
        throw DataError("hyperboxes disagree on categorical dimensions");
    for (std::size_t j = 0; j < r; ++j) {
        const CategoryCounter& ca = a.categories[j];
        const CategoryCounter& cb = b.categories[j];
        bool attribute_overlaps = false;
        for (const auto& [value, count_a] : ca.counts()) {
            std::int64_t count_b = cb.count(value);
            if (count_b == 0) continue;
            if (count_a * cb.total() == count_b * ca.total()) {
                attribute_overlaps = true;
                break;
            }
        }
        if (!attribute_overlaps) return false;
    }
    return true;
}

/// Two-stage overlap test of a candidate box against every box of another
/// class: categorical overlap only matters where the numeric similarity
/// already signals an overlap. True when some other-class box overlaps on
/// both feature types.
inline bool joint_overlap_with_other_classes(const GfmmModel& model,
                                             const Hyperbox& candidate) {
    for (const Hyperbox& other : model.boxes) {
        if (other.label == candidate.label) continue;
        if (overlap_numeric(candidate, other) < 1.0) continue;
        if (overlap_categorical(candidate, other)) return true;
    }
    return false;
}

}  // namespace gfmm
