#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gfmm/errors.hpp"
#include "gfmm/hyperbox.hpp"
#include "gfmm/params.hpp"
#include "gfmm/pattern.hpp"

namespace gfmm {

/// Shannon entropy (log base 2) of the value distribution stored in one
/// categorical attribute. A single-valued attribute has entropy 0.
inline double attribute_entropy(const CategoryCounter& counter) {
    if (counter.total() < 1) throw DataError("empty category counter");
    const double total = static_cast<double>(counter.total());
    double h = 0.0;
    for (const auto& [value, count] : counter.counts()) {
        double p = static_cast<double>(count) / total;
        h -= p * std::log2(p);
    }
    return h;
}

/// Entropy change of one categorical attribute if it hypothetically absorbed
/// `value`: H(after) - n/(n+1) * H(before). The counter is not modified.
inline double entropy_change(const CategoryCounter& counter, int value) {
    if (counter.total() < 1) throw DataError("empty category counter");
    const double before = attribute_entropy(counter);
    const std::int64_t old_total = counter.total();
    const double total = static_cast<double>(old_total + 1);
    double after = 0.0;
    for (const auto& [v, count] : counter.counts()) {
        double c = static_cast<double>(count + (v == value ? 1 : 0));
        double p = c / total;
        after -= p * std::log2(p);
    }
    if (!counter.contains(value)) {
        double p = 1.0 / total;
        after -= p * std::log2(p);
    }
    return after - static_cast<double>(old_total) / total * before;
}

/// Largest possible entropy change for an attribute of a box holding
/// `sample_count` samples; attained exactly when the absorbed value is new.
/// Strictly decreasing, 1 at a single sample, and vanishing as the box grows.
inline double entropy_change_upper_bound(std::int64_t sample_count) {
    if (sample_count < 1)
        throw DataError("entropy change bound requires at least one sample");
    const double n = static_cast<double>(sample_count);
    return std::log2(n + 1.0) - n / (n + 1.0) * std::log2(n);
}

struct CategoricalExpansionCheck {
    bool admissible = true;
    /// Per-attribute entropy changes, for diagnostics.
    std::vector<double> entropy_changes;
};

/// Categorical expansion condition: every attribute's entropy change stays
/// within delta (V1), or their mean does (V2). With no categorical
/// attributes the expansion is trivially admissible.
inline CategoricalExpansionCheck categorical_expansion_admissible(
    const Hyperbox& box, const MixedPattern& x, double delta, Variant variant) {
    const std::size_t r = box.categories.size();
    if (x.cats.size() != r)
        throw DataError("pattern and hyperbox disagree on categorical dimensions");
    CategoricalExpansionCheck check;
    if (r == 0) return check;
    check.entropy_changes.reserve(r);
    double sum = 0.0;
    double max = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
        double z = entropy_change(box.categories[j], x.cats[j]);
        check.entropy_changes.push_back(z);
        sum += z;
        max = std::max(max, z);
    }
    if (variant == Variant::V1)
        check.admissible = max <= delta;
    else
        check.admissible = sum / static_cast<double>(r) <= delta;
    return check;
}

/// Maximum hyperbox size condition: after covering the pattern, every
/// continuous edge must stay within theta (boundary inclusive).
inline bool numeric_expansion_admissible(const Hyperbox& box, const MixedPattern& x,
                                         double theta) {
    const std::size_t n = box.min_point.size();
    if (x.lower.size() != n || x.upper.size() != n)
        throw DataError("pattern and hyperbox disagree on continuous dimensions");
    for (std::size_t j = 0; j < n; ++j) {
        double span = std::max(box.max_point[j], x.upper[j]) -
                      std::min(box.min_point[j], x.lower[j]);
        if (span > theta) return false;
    }
    return true;
}

}  // namespace gfmm
