#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "adlgen/errors.hpp"

namespace adlgen {

/// C++ spelling to ADL spelling map, applied to primitive heads only.
/// Unmapped primitives pass through unchanged.
class type_map {
public:
    /// Ships int -> long and unsigned int -> unsigned long.
    static type_map defaults();

    void set(std::string cpp_spelling, std::string adl_spelling);
    std::string_view apply(std::string_view primitive) const;
    const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

private:
    std::map<std::string, std::string, std::less<>> entries_;
};

/// Parsed type expression plus the C++ to ADL mapping result.
struct type_ref {
    enum class form { primitive, named, template_app };

    form kind = form::named;
    bool is_const = false;
    /// Canonical primitive spelling, qualified name, or template head.
    std::string name;
    std::vector<type_ref> args;
    /// Source text as given.
    std::string spelling;
    /// Rendering after the type map; templates use `head <arg, ...>`.
    std::string adl_spelling;

    /// Whitespace-normalized C++ rendering; parsing it again is stable.
    std::string cpp_spelling() const;

    friend bool operator==(const type_ref&, const type_ref&) = default;
};

bool is_primitive_type_name(std::string_view name);

/// Final segment of a qualified name ("std::vector" -> "vector").
std::string_view unqualified_name(std::string_view qualified);

/// Parses a subset type expression: optional const, qualified ids, template
/// applications. Pointers and references are rejected (ADL carries values).
type_ref normalize_type(std::string_view spelling);
type_ref normalize_type(std::string_view spelling, const type_map& map);

}  // namespace adlgen
