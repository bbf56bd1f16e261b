#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gfmm/errors.hpp"

namespace gfmm {

/// Which categorical expansion condition the learner applies: V1 bounds the
/// entropy change of every categorical attribute, V2 bounds their mean.
enum class Variant { V1, V2 };

inline std::string to_string(Variant v) { return v == Variant::V1 ? "v1" : "v2"; }

inline Variant variant_from_string(std::string_view s) {
    if (s == "v1") return Variant::V1;
    if (s == "v2") return Variant::V2;
    throw DataError("unknown variant '" + std::string(s) + "' (expected v1 or v2)");
}

struct HyperParams {
    /// Maximum hyperbox edge length per continuous dimension.
    double theta = 1.0;
    /// Maximum admissible entropy change per categorical attribute (v1) or
    /// averaged over attributes (v2).
    double delta = 1.0;
    /// Trade-off between the numeric and categorical membership parts.
    double alpha = 1.0;
    /// Membership sensitivity; a single value broadcasts over all continuous
    /// dimensions.
    std::vector<double> gamma{1.0};
    Variant variant = Variant::V1;

    double gamma_at(std::size_t j) const {
        return gamma.size() == 1 ? gamma[0] : gamma[j];
    }

    bool operator==(const HyperParams&) const = default;
};

inline void validate_params(const HyperParams& p, std::size_t continuous_count,
                            std::size_t categorical_count) {
    if (!(p.theta > 0.0 && p.theta <= 1.0))
        throw DataError("theta must lie in (0,1]");
    if (!(p.delta >= 0.0 && p.delta <= 1.0))
        throw DataError("delta must lie in [0,1]");
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0))
        throw DataError("alpha must lie in [0,1]");
    if (categorical_count == 0 && p.alpha != 1.0)
        throw DataError("alpha must be 1 when the schema has no categorical features");
    if (continuous_count == 0 && p.alpha != 0.0)
        throw DataError("alpha must be 0 when the schema has no continuous features");
    if (p.gamma.empty() ||
        (p.gamma.size() != 1 && p.gamma.size() != continuous_count))
        throw DataError("gamma must be a single value or one per continuous dimension");
    for (double g : p.gamma)
        if (!(g > 0.0)) throw DataError("gamma values must be positive");
}

}  // namespace gfmm
