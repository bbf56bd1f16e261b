#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfmm/errors.hpp"
#include "gfmm/schema.hpp"

namespace gfmm {

/// One training or query sample. Continuous attributes are an interval
/// [lower, upper] in the unit hypercube (point inputs have lower == upper);
/// categorical attributes are interned value ids.
struct MixedPattern {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<int> cats;
    std::optional<int> label;

    static MixedPattern point(std::vector<double> x, std::vector<int> cats,
                              std::optional<int> label = std::nullopt) {
        MixedPattern p;
        p.lower = x;
        p.upper = std::move(x);
        p.cats = std::move(cats);
        p.label = label;
        return p;
    }

    bool operator==(const MixedPattern&) const = default;
};

/// Checks interval ordering, unit-hypercube bounds, and dimensions against
/// the schema. Throws DataError on violation.
inline void validate_pattern(const MixedPattern& p, std::size_t continuous_count,
                             std::size_t categorical_count) {
    if (p.lower.size() != continuous_count || p.upper.size() != continuous_count)
        throw DataError("pattern has " + std::to_string(p.lower.size()) +
                        " continuous values, schema expects " +
                        std::to_string(continuous_count));
    if (p.cats.size() != categorical_count)
        throw DataError("pattern has " + std::to_string(p.cats.size()) +
                        " categorical values, schema expects " +
                        std::to_string(categorical_count));
    for (std::size_t j = 0; j < continuous_count; ++j) {
        if (!(p.lower[j] <= p.upper[j]))
            throw DataError("pattern interval has lower > upper in dimension " +
                            std::to_string(j));
        if (p.lower[j] < 0.0 || p.upper[j] > 1.0)
            throw DataError("continuous value outside [0,1] in dimension " +
                            std::to_string(j) + "; normalize the data first");
    }
}

}  // namespace gfmm
