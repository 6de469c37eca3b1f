#pragma once

#include <stdexcept>
#include <string>

namespace mubent {

/// Input violates an operation's precondition (wrong dimension, out-of-range
/// parameter, invalid state).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested object would exceed a configured size cap.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Valid request that this library does not construct (e.g. a MUB set for d=6).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace mubent
