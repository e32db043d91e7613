#ifndef HARDLEF_ERRORS_HPP
#define HARDLEF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hardlef {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class UnsupportedMode : public Error {
public:
    using Error::Error;
};

class SizeLimit : public Error {
public:
    using Error::Error;
};

/// A mathematical invariant that must hold by construction was violated.
/// Seeing one of these means there is a bug in the library.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class NotACocycle : public Error {
public:
    using Error::Error;
};

class InvalidSymplecticForm : public Error {
public:
    using Error::Error;
};

class NoHarmonicRepresentative : public Error {
public:
    using Error::Error;
};

class StructureViolation : public Error {
public:
    StructureViolation(const std::string& what, std::size_t row, std::size_t col,
                       std::string expected, std::string actual)
        : Error(what + " at (" + std::to_string(row) + ", " + std::to_string(col) +
                "): expected " + expected + ", found " + actual),
          row_(row), col_(col), expected_(std::move(expected)), actual_(std::move(actual)) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& actual() const noexcept { return actual_; }

private:
    std::size_t row_;
    std::size_t col_;
    std::string expected_;
    std::string actual_;
};

class CertificateFailure : public Error {
public:
    CertificateFailure(const std::string& what, std::string offending_prime)
        : Error(what), offending_prime_(std::move(offending_prime)) {}

    /// Decimal string of a prime dividing two of the square-free parts, or empty.
    const std::string& offending_prime() const noexcept { return offending_prime_; }

private:
    std::string offending_prime_;
};

} // namespace hardlef

#endif // HARDLEF_ERRORS_HPP
