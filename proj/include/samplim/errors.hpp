#pragma once

#include <stdexcept>
#include <string>

namespace samplim {

// All failures carry a component prefix in the message ("cylinder: ...",
// "forcing: ...") so the CLI can surface provenance.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values: unknown labels, mismatched sides, out-of-range ids.
struct DomainError : Error {
    using Error::Error;
};

// A point query left a constrained coordinate unassigned.
struct UnderspecifiedPointError : Error {
    using Error::Error;
};

// Alleged partition pieces overlap; message contains a witness point.
struct NotAPartitionError : Error {
    using Error::Error;
};

// Row/Col feature with a non-injective index list or an h too short for it.
struct MalformedFeatureError : Error {
    using Error::Error;
};

// separation_witness on semantically equal events (or X strictly inside Y).
struct NoWitnessError : Error {
    using Error::Error;
};

// null_cover with mu(X) = 1: powers cannot fall below the threshold.
struct CannotShrinkError : Error {
    using Error::Error;
};

// homogeneity_exact with omega* inside the cylinder's constrained set.
struct ExcludedCoordinateError : Error {
    using Error::Error;
};

// nonatomic_split with mu(B) in {0,1}.
struct HypothesisViolationError : Error {
    using Error::Error;
};

// Exhaustive rectangle search requested on an instance beyond the guard.
struct SizeError : Error {
    using Error::Error;
};

// Config / script / CLI problems; maps to exit code 2.
struct UsageError : Error {
    using Error::Error;
};

// A constructively-impossible state was reached; indicates a bug.
struct InternalConsistencyError : Error {
    using Error::Error;
};

}  // namespace samplim
