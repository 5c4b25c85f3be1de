#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linfix {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input data (non-finite entries, dimension mismatch).
struct InputError : Error {
    using Error::Error;
};

/// A numerical routine failed to converge or produced unusable results.
struct NumericError : Error {
    using Error::Error;
};

/// Linear system singular to working precision. Carries the numerical rank.
struct RankDeficiencyError : NumericError {
    RankDeficiencyError(const std::string& what, std::size_t rank_)
        : NumericError(what), rank(rank_) {}
    std::size_t rank;
};

/// Invalid parameter value (step sizes, schedules, witnesses out of range).
struct ParameterError : Error {
    using Error::Error;
};

/// A quantity is outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

/// Model-level violation (invalid game or graph data).
struct ModelError : Error {
    using Error::Error;
};

/// Certificate construction or verification failed (conditioning, bad P).
struct CertificateError : NumericError {
    using NumericError::NumericError;
};

/// Requested eigenvalue does not match any cluster of a spectrum.
struct LookupError : Error {
    using Error::Error;
};

/// Malformed input file. Carries a 1-based position for diagnostics.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line_, std::size_t column_)
        : Error(what + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
    std::size_t line;
    std::size_t column;
};

}  // namespace linfix
