#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlgen/model.hpp"
#include "adlgen/type_ref.hpp"

namespace adlgen {

struct enum_payload {
    std::vector<std::string> values;
    std::vector<std::string> names;
    friend bool operator==(const enum_payload&, const enum_payload&) = default;
};

/// One logical line of an inspector-format config file: `keyPath = value`.
/// The payload is an enumeration when `enumeration` is set, a scalar
/// otherwise.
struct config_entry {
    std::string key_path;
    std::string scalar;
    std::optional<enum_payload> enumeration;
    friend bool operator==(const config_entry&, const config_entry&) = default;
};

/// Line-oriented grammar: continuation lines start with `\`, blank lines and
/// `#` comments are ignored.
std::vector<config_entry> parse_config(std::string_view text);

/// Inverse of parse_config; enumerations render on one logical line.
std::string render_config(std::span<const config_entry> entries);

/// Config-defined description of one property key.
struct property_schema {
    std::string key;
    /// Shapes the schema governs; empty means every shape.
    std::set<shape_type> applies_to;
    std::optional<std::vector<std::string>> allowed;
    std::optional<std::vector<std::string>> display_names;
    std::optional<std::string> default_value;
    /// Human label from a trailing `.name` entry.
    std::string label;
};

struct violation {
    std::string key;
    std::string offered;
    std::vector<std::string> allowed;
    std::string message() const;
};

class schema_set {
public:
    /// ADLENABLED {EXTERNAL, ADLEXT, ADL}, ADLINTERFACE {interface,
    /// DataObject, ContainedObject} and an unconstrained ADLFOLDER.
    static schema_set builtins();

    /// Merges one entry; later entries override earlier ones key-by-key.
    void apply(const config_entry& entry);

    const property_schema* find(std::string_view key) const;
    const property_schema* find(std::string_view key, shape_type shape) const;
    const std::map<std::string, property_schema, std::less<>>& schemas() const {
        return schemas_;
    }

private:
    std::map<std::string, property_schema, std::less<>> schemas_;
};

/// ok (nullopt) iff no schema governs (shape, key) or value is allowed.
std::optional<violation> validate_value(const schema_set& schemas, shape_type shape,
                                        std::string_view key, std::string_view value);

struct header_fields {
    std::string title;
    std::string author;
    std::string version;
    friend bool operator==(const header_fields&, const header_fields&) = default;
};

/// Generation settings that are not per-property schemas. The header block
/// defaults match the shipped generator identity.
struct generator_defaults {
    header_fields header{"Module ADL generator for Together", "Massimo_Marino@lbl.gov",
                         "0.9.6"};
    type_map typemap = type_map::defaults();
};

struct config_set {
    schema_set schemas = schema_set::builtins();
    generator_defaults defaults;

    /// Routes one entry to schemas, header fields or the type map.
    void apply(const config_entry& entry);
    void apply(std::span<const config_entry> entries);
};

/// Parses every regular file in the directory, sorted by filename; later
/// files override earlier entries key-by-key.
config_set load_config_dir(const std::filesystem::path& dir);

/// `cppType = adlType` lines on top of the default map.
type_map parse_typemap(std::string_view text);

}  // namespace adlgen
