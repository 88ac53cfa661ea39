#pragma once

#include <stdexcept>
#include <string>

namespace cxlift {

// Malformed text input (fixtures, presentations, words, literals).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a mathematical precondition (non-unitary matrix, relator not
// central, division by zero, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Floating point procedure failed its own guard (refinement budget, ambiguous
// rounding, vanishing projection).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Enumeration or reduction hit a configured bound.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cxlift
