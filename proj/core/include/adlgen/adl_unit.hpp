#pragma once

#include <string>
#include <vector>

namespace adlgen {

struct attribute_decl {
    bool persistent = false;
    bool readonly = false;
    std::string visibility;
    /// ADL spelling, e.g. "std::vector <double>".
    std::string type;
    std::string name;

    /// `[persistent ][readonly ]<visibility> attribute <type> <name>;`
    std::string render() const;

    friend bool operator==(const attribute_decl&, const attribute_decl&) = default;
};

struct operation_param {
    std::string type;
    std::string name;
    friend bool operator==(const operation_param&, const operation_param&) = default;
};

struct operation_decl {
    std::string visibility;
    /// Never empty; constructors do not become operation declarations.
    std::string return_type;
    std::string name;
    /// Direction is always `in`.
    std::vector<operation_param> params;

    /// `<visibility> <returnType> <name>(in <type> <name>, ...);`
    std::string render() const;

    friend bool operator==(const operation_decl&, const operation_decl&) = default;
};

/// AST of one generated `.adl` file.
struct adl_unit {
    /// `<class_name>_ADL`.
    std::string guard;
    std::string title;
    std::string author;
    std::string version;
    /// `<TypeName>.adl` targets in first-reference order, no self, no dups.
    std::vector<std::string> includes;
    std::string kind;
    std::string class_name;
    std::vector<attribute_decl> attributes;
    std::vector<operation_decl> operations;
    /// ADLEXT mode: the body is a single extern declaration, no members,
    /// no includes.
    bool extern_only = false;

    friend bool operator==(const adl_unit&, const adl_unit&) = default;
};

}  // namespace adlgen
