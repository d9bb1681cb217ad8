// Error taxonomy shared by the whole library.
#pragma once

#include <stdexcept>
#include <string>

namespace teleopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Arguments violate a documented precondition (non-finite entries, bad ranges, ...).
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& what) : Error(what) {}
};

/// A covariance matrix fails the uncertainty principle; carries the offending
/// Williamson eigenvalue so callers can report it.
class UnphysicalStateError : public Error {
public:
    UnphysicalStateError(const std::string& what, double williamson_eigenvalue)
        : Error(what), williamson_eigenvalue(williamson_eigenvalue) {}
    double williamson_eigenvalue;
};

/// An internal numerical procedure failed to converge or produced an
/// out-of-tolerance residual.
class NumericalFailureError : public Error {
public:
    explicit NumericalFailureError(const std::string& what) : Error(what) {}
};

/// Input is valid but outside the domain an operation is defined on.
class OutOfDomainError : public Error {
public:
    explicit OutOfDomainError(const std::string& what) : Error(what) {}
};

}  // namespace teleopt
