#pragma once

#include <stdexcept>
#include <string>

namespace algkex {

/// Malformed input: bad dimensions, unknown tokens, singular matrices,
/// schema violations in JSON documents.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant that must hold did not (commutation failures,
/// disagreeing session keys). Seeing one means a bug, not bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A bounded search or resampling loop ran out of attempts.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace algkex
