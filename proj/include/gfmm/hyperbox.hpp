#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gfmm/errors.hpp"
#include "gfmm/pattern.hpp"

namespace gfmm {

/// Per-attribute multiset of categorical values with their cardinalities,
/// e.g. {apple: 5, orange: 1}. Ordered storage keeps iteration (and thus
/// serialization and entropy sums) deterministic.
class CategoryCounter {
public:
    void add(int value) {
        ++counts_[value];
        ++total_;
    }

    std::int64_t count(int value) const {
        auto it = counts_.find(value);
        return it == counts_.end() ? 0 : it->second;
    }

    bool contains(int value) const { return counts_.count(value) != 0; }

    /// Sum of all cardinalities; equals the owning hyperbox's sample count.
    std::int64_t total() const { return total_; }

    /// Number of distinct values stored.
    std::size_t distinct() const { return counts_.size(); }

    const std::map<int, std::int64_t>& counts() const { return counts_; }

    bool operator==(const CategoryCounter&) const = default;

private:
    std::map<int, std::int64_t> counts_;
    std::int64_t total_ = 0;
};

/// Axis-aligned box in the unit hypercube plus one CategoryCounter per
/// categorical attribute. Snapshot/restore for the learner's revert path is
/// plain value copy; copies are field-identical.
struct Hyperbox {
    std::vector<double> min_point;
    std::vector<double> max_point;
    std::vector<CategoryCounter> categories;
    int label = -1;
    std::int64_t sample_count = 0;
    /// Monotone creation index; breaks equal-membership ties (older first).
    std::int64_t created_seq = 0;

    bool operator==(const Hyperbox&) const = default;
};

/// Seeds a new hyperbox from a single labeled pattern: the box degenerates
/// to the pattern's interval and every categorical attribute starts as a
/// singleton set.
inline Hyperbox create_point_hyperbox(const MixedPattern& x, std::int64_t seq) {
    if (!x.label)
        throw DataError("unlabeled pattern cannot seed a hyperbox");
    Hyperbox b;
    b.min_point = x.lower;
    b.max_point = x.upper;
    b.categories.resize(x.cats.size());
    for (std::size_t j = 0; j < x.cats.size(); ++j)
        b.categories[j].add(x.cats[j]);
    b.label = *x.label;
    b.sample_count = 1;
    b.created_seq = seq;
    return b;
}

/// Statistics-only absorption: categorical cardinalities and the sample
/// count are updated, the box geometry is left untouched. Used when a
/// pattern is already contained in the box.
inline void absorb_counts(Hyperbox& b, const MixedPattern& x) {
    for (std::size_t j = 0; j < b.categories.size(); ++j)
        b.categories[j].add(x.cats[j]);
    ++b.sample_count;
}

/// Expands the box to cover the pattern: min/max update on the continuous
/// bounds and cardinality increments on every categorical attribute.
inline void absorb_pattern(Hyperbox& b, const MixedPattern& x) {
    if (!x.label || *x.label != b.label)
        throw DataError("pattern label does not match hyperbox label");
    if (x.lower.size() != b.min_point.size() || x.cats.size() != b.categories.size())
        throw DataError("pattern dimensions do not match hyperbox");
    for (std::size_t j = 0; j < b.min_point.size(); ++j) {
        b.min_point[j] = std::min(b.min_point[j], x.lower[j]);
        b.max_point[j] = std::max(b.max_point[j], x.upper[j]);
    }
    absorb_counts(b, x);
}

}  // namespace gfmm
