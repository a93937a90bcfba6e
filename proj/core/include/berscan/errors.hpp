#pragma once

#include <stdexcept>
#include <string>

namespace berscan {

// All recoverable failures are typed so callers (and the CLI exit-code
// mapping) can tell contract violations apart from IO trouble.

struct NotHyperbolicError : std::domain_error {
    using std::domain_error::domain_error;
};

struct TooManyGeneratorsError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CutoffTooSmallError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooCloseToPoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PathTooCloseError : std::domain_error {
    using std::domain_error::domain_error;
};

struct StepUnderflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DepthExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotRelativeError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InsufficientCentersError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace berscan
