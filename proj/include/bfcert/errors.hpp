#pragma once

#include <stdexcept>
#include <string>

namespace bfcert {

/// Malformed or inconsistent code specification (bad support entry, bad JSON, ...).
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vector/matrix size mismatch.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decoder or bound configuration outside its contract (e.g. threshold out of [1, v_i]).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Refusal of an operation protected by a feasibility guard (exhaustive oracles etc.).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}
