#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbscache {

/// Precondition or argument outside the operation's domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Instance too large for an exhaustive routine (exact coloring, clique search).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Iterative weighting ran out of iterations with some weights still zero.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<std::size_t> zero_weight)
        : std::runtime_error(what), zero_weight_(std::move(zero_weight)) {}

    const std::vector<std::size_t>& zero_weight_indices() const noexcept { return zero_weight_; }

private:
    std::vector<std::size_t> zero_weight_;
};

/// Malformed configuration text; the message names the offending line or key.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sbscache
