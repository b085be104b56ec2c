#pragma once

#include <stdexcept>
#include <string>

namespace starq {

// Malformed input: mismatched dimensions, unknown generators, invalid group
// elements, non-closed bases.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computation was requested beyond the verified cutoff. Products are never
// silently truncated; exceeding the range is an error.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// The datum failed a structural requirement discovered mid-computation
// (no invariant trace, excess invariants, singular Gram matrix, ...).
// Checkers catch this and turn it into a report entry.
struct DatumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace starq
