#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adlgen {

/// Base class for all toolchain faults.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown element id or unresolved name.
class lookup_error : public error {
public:
    using error::error;
};

/// Operation applied to an element of the wrong shape.
class shape_error : public error {
public:
    using error::error;
};

/// Visitor dispatch requested for a shape that has no callback.
class dispatch_error : public error {
public:
    using error::error;
};

/// Property value rejected by a schema, or an immutable property written.
class validation_error : public error {
public:
    using error::error;
};

/// Two classes resolve to the same qualified name.
class name_collision_error : public error {
public:
    using error::error;
};

/// Source text outside the supported subset. Carries a 1-based position.
class parse_error : public error {
public:
    parse_error(const std::string& message, std::size_t line, std::size_t column = 0)
        : error(message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Malformed or unknown doc-comment annotation tag.
class annotation_error : public error {
public:
    using error::error;
};

/// Type expression outside the value-type subset (pointers, references, ...).
class type_error : public error {
public:
    using error::error;
};

/// Configuration directory or file problem. Carries file and line when known.
class config_error : public error {
public:
    explicit config_error(const std::string& message, std::string file = {}, std::size_t line = 0)
        : error(message), file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Empty context or empty selection; what() carries the exact user message.
class selection_error : public error {
public:
    using error::error;
};

/// Per-class lowering failure aggregating every failed member.
class generation_error : public error {
public:
    using error::error;
};

/// Filesystem failure while emitting output.
class io_error : public error {
public:
    using error::error;
};

}  // namespace adlgen
