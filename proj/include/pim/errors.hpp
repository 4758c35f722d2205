#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pim {

// Error categories line up with the CLI exit codes (and the C API status
// codes): parameter = 1, parse = 2, resource = 3, internal = 4.
enum class ErrorKind {
    parameter,
    parse,
    resource,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Bad option value, unknown activity, invalid cut, missing column.
class ParameterError : public Error {
public:
    explicit ParameterError(std::string message)
        : Error(ErrorKind::parameter, std::move(message)) {}
};

/// Malformed input data. Carries the byte offset or line number when known.
class ParseError : public Error {
public:
    explicit ParseError(std::string message, std::size_t offset = npos)
        : Error(ErrorKind::parse, std::move(message)), offset_(offset) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool has_offset() const { return offset_ != npos; }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A configured guard was exceeded (e.g. the model-language explosion cap).
class ResourceError : public Error {
public:
    explicit ResourceError(std::string message)
        : Error(ErrorKind::resource, std::move(message)) {}
};

/// Broken internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
public:
    explicit InternalError(std::string message)
        : Error(ErrorKind::internal, std::move(message)) {}
};

}  // namespace pim
