#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace imc {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes do not agree with the state space.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A model, row or query failed validation. Carries every violation found.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// The LP solver or a recursion produced something it should not have
/// (infeasible row at solve time, unbounded simplex, non-finite value).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A materialized object would exceed its configured size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace imc
