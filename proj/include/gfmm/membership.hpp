#pragma once

#include <algorithm>
#include <cstddef>

#include "gfmm/errors.hpp"
#include "gfmm/hyperbox.hpp"
#include "gfmm/model.hpp"
#include "gfmm/params.hpp"
#include "gfmm/pattern.hpp"

namespace gfmm {

/// Ramp threshold function: clamps xi * gamma into [0, 1].
inline double ramp(double xi, double gamma) {
    if (!(gamma > 0.0)) throw DataError("ramp requires gamma > 0");
    double v = xi * gamma;
    if (v > 1.0) return 1.0;
    if (v < 0.0) return 0.0;
    return v;
}

/// Degree of fit of the continuous part of a pattern to a hyperbox: the
/// minimum over dimensions of how little the pattern sticks out past the
/// box on either side. Returns 1 exactly when the pattern interval is
/// contained in the box. The empty minimum (no continuous dimensions) is 1.
inline double numeric_membership(const MixedPattern& x, const Hyperbox& b,
                                 const HyperParams& params) {
    const std::size_t n = b.min_point.size();
    if (x.lower.size() != n || x.upper.size() != n)
        throw DataError("pattern and hyperbox disagree on continuous dimensions");
    double m = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double g = params.gamma_at(j);
        double above = 1.0 - ramp(x.upper[j] - b.max_point[j], g);
        double below = 1.0 - ramp(b.min_point[j] - x.lower[j], g);
        m = std::min(m, std::min(above, below));
    }
    return m;
}

/// Probability of encountering `value` among the values stored for one
/// categorical attribute; 0 for values never absorbed.
inline double categorical_probability(int value, const CategoryCounter& counter) {
    if (counter.total() < 1) throw DataError("empty category counter");
    return static_cast<double>(counter.count(value)) /
           static_cast<double>(counter.total());
}

/// Mixed membership: alpha-weighted blend of the numeric min term and the
/// average categorical probability. The average (rather than a min) keeps a
/// single unseen categorical value from zeroing the whole categorical part.
inline double mixed_membership(const MixedPattern& x, const Hyperbox& b,
                               const HyperParams& params) {
    const std::size_t r = b.categories.size();
    if (x.cats.size() != r)
        throw DataError("pattern and hyperbox disagree on categorical dimensions");
    double numeric = b.min_point.empty() ? 1.0 : numeric_membership(x, b, params);
    double cat_avg = 0.0;
    if (r > 0) {
        double sum = 0.0;
        for (std::size_t j = 0; j < r; ++j)
            sum += categorical_probability(x.cats[j], b.categories[j]);
        // sum/r (not (1-alpha)/r * sum): keeps membership exactly 1.0 for a
        // fully matching pattern, which the learner's containment test needs.
        cat_avg = sum / static_cast<double>(r);
    }
    return params.alpha * numeric + (1.0 - params.alpha) * cat_avg;
}

}  // namespace gfmm
