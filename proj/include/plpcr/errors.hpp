#pragma once

#include <stdexcept>
#include <string>

namespace plpcr {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI error record.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain", message) {}
};

/// An iterative routine failed to converge.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& message) : Error("numeric", message) {}
};

/// Input data violates a FailureHistory invariant. `row()` is the 1-based
/// data row (header excluded), or 0 when the error is not tied to a row.
class ValidationError : public Error {
public:
    ValidationError(const std::string& message, std::size_t row = 0)
        : Error("validation", message), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Estimator precondition failed (e.g. no failures for a cause). `cause()`
/// is the offending cause label, or 0 for pooled conditions.
class EstimationError : public Error {
public:
    EstimationError(const std::string& message, int cause = 0)
        : Error("estimation", message), cause_(cause) {}

    int cause() const noexcept { return cause_; }

protected:
    EstimationError(std::string kind, const std::string& message, int cause)
        : Error(std::move(kind), message), cause_(cause) {}

private:
    int cause_;
};

/// Posterior would be improper for the observed counts.
class ImproperPosteriorError : public EstimationError {
public:
    ImproperPosteriorError(const std::string& message, int cause = 0)
        : EstimationError("improper_posterior", message, cause) {}
};

/// The requested model/prior combination has no closed form here.
class UnsupportedModelError : public Error {
public:
    explicit UnsupportedModelError(const std::string& message)
        : Error("unsupported_model", message) {}
};

/// A Monte Carlo study produced no usable replications.
class StudyError : public Error {
public:
    explicit StudyError(const std::string& message) : Error("study", message) {}
};

}  // namespace plpcr
