#pragma once

#include <stdexcept>
#include <string>

namespace repsucc {

/// Argument outside the mathematical domain of an operation (e.g. a
/// probability outside (0,1) or a correlation with |r| >= 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The original study is not significant at the requested level, so no
/// sufficiently sceptical prior exists.
class NotSignificant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data (bad CSV row, missing column, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace repsucc
