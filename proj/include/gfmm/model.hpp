#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gfmm/hyperbox.hpp"
#include "gfmm/params.hpp"
#include "gfmm/schema.hpp"

namespace gfmm {

/// A trained (or in-training) classifier: the ordered hyperbox list plus the
/// schema, hyper-parameters, and string dictionaries it was built with.
struct GfmmModel {
    FeatureSchema schema;
    Vocabulary vocab;
    HyperParams params;
    std::vector<Hyperbox> boxes;
    std::int64_t next_seq = 0;

    std::size_t continuous_count() const { return schema.continuous_count(); }
    std::size_t categorical_count() const { return schema.categorical_count(); }

    bool operator==(const GfmmModel&) const = default;
};

inline GfmmModel make_model(FeatureSchema schema, Vocabulary vocab, HyperParams params) {
    validate_params(params, schema.continuous_count(), schema.categorical_count());
    if (vocab.attributes.size() != schema.categorical_count())
        throw DataError("vocabulary has " + std::to_string(vocab.attributes.size()) +
                        " attribute dictionaries, schema expects " +
                        std::to_string(schema.categorical_count()));
    return GfmmModel{std::move(schema), std::move(vocab), std::move(params), {}, 0};
}

}  // namespace gfmm
