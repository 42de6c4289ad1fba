#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Effective stiffness of an oscillator became non-positive.
class InstabilityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical engine stopped before reaching its tolerance. Carries the
/// best value obtained and an estimate of the remaining error.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial, double estimate)
        : std::runtime_error(what), partial_(partial), estimate_(estimate) {}

    double partial() const noexcept { return partial_; }
    double estimate() const noexcept { return estimate_; }

private:
    double partial_;
    double estimate_;
};

/// Matsubara sum hit its term cap.
class TruncationError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Malformed or invalid input file. `row()` is the 1-based line number, 0 if
/// the error concerns the file as a whole.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row)
        : std::runtime_error(what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Two independent evaluation routes disagreed beyond their contract.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace casimir
