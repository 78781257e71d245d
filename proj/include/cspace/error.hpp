#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cspace {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point or record lacks coordinates for a domain the operation needs.
class MissingDomainError : public Error {
public:
    explicit MissingDomainError(std::string domain_id)
        : Error("missing domain '" + domain_id + "'"), domain_id_(std::move(domain_id)) {}

    const std::string& domain_id() const noexcept { return domain_id_; }

private:
    std::string domain_id_;
};

/// A vector length does not match the dimension count of its domain.
class DimensionMismatchError : public Error {
public:
    DimensionMismatchError(const std::string& domain_id, std::size_t expected, std::size_t actual)
        : Error("domain '" + domain_id + "' expects " + std::to_string(expected) +
                " dimension(s), got " + std::to_string(actual)) {}
};

/// Invalid argument or violated type invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed input document. `line` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cspace
