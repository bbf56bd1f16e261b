#pragma once

#include <stdexcept>
#include <string>

namespace gfmm {

/// Malformed input: bad files, dimension mismatches, out-of-range values.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric procedure could not produce a result (non-convergence,
/// degenerate denominator, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gfmm
