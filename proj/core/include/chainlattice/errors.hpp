#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chainlattice {

/// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request exceeds the supported size envelope (ground set too large, search space too big).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction whose constraints cannot be met on the given instance.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Largest ground-set size accepted by dense constructions. Defaults to 24;
/// the CHAINLATTICE_MAX_N environment variable overrides it.
int max_ground_set();

/// Throws ResourceError when n lies outside [0, max_ground_set()].
void require_envelope(int n, const char* what);

}  // namespace chainlattice
