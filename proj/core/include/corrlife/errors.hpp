#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrlife {

/// Malformed or unusable input data (bad CSV rows, non-positive prices,
/// empty calendars). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}

    /// Error tied to a line of an input file, rendered as `file:line: reason`.
    DataError(const std::string& file, std::size_t line, const std::string& reason)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + reason) {}
};

/// Invalid run configuration or out-of-range parameters (exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A computed quantity violated one of its invariants (exit code 3).
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace corrlife
