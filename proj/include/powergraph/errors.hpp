#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace powergraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input graph violates simplicity or the vertex id range.
class GraphError : public Error {
public:
    using Error::Error;
};

/// A module operation would break the laminar hierarchy.
class HierarchyError : public Error {
public:
    using Error::Error;
};

/// A module would have fewer than two children.
class DegenerateModuleError : public Error {
public:
    using Error::Error;
};

/// Input exceeds the size an exhaustive routine is configured to accept.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace powergraph
