#pragma once

#include <stdexcept>
#include <string>

namespace qbound {

/// Parameters outside the domain of a formula (e.g. t > n - sigma for the Hamming sum).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A property the theory guarantees (real distinct Lloyd roots, distinct floors,
/// positive reciprocal bound) did not hold. Always indicates a bug or an
/// out-of-theory input; never swallowed.
class PropertyViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition failure on polynomial inputs (non square-free, pole at a root, ...).
class AlgebraError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qbound
