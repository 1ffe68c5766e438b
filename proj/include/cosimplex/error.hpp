#pragma once

#include <stdexcept>
#include <string>

namespace cosimplex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural law failed during validated construction. `law()` names the
/// first violated identity, e.g. "d^j d^i = d^i d^{j-1} (n=2, i=0, j=1)".
class ValidationError : public Error {
public:
    ValidationError(std::string law, const std::string& detail = {})
        : Error(detail.empty() ? "validation failed: " + law
                               : "validation failed: " + law + ": " + detail),
          law_(std::move(law)) {}
    const std::string& law() const noexcept { return law_; }

private:
    std::string law_;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class DegreeRangeError : public Error {
public:
    using Error::Error;
};

/// An enumeration or closure did not finish within its budget.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class InfiniteGroup : public Error {
public:
    using Error::Error;
};

class HypothesisFailed : public Error {
public:
    using Error::Error;
};

class NotATorsor : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace cosimplex
