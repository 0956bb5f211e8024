#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlgen/adl_unit.hpp"
#include "adlgen/config.hpp"
#include "adlgen/messages.hpp"
#include "adlgen/model.hpp"
#include "adlgen/type_ref.hpp"

namespace adlgen {

enum class gen_mode { external, adlext, adl };

std::string_view to_string(gen_mode mode);
std::optional<gen_mode> gen_mode_from_string(std::string_view text);

/// Effective generation settings for one class: per-class properties
/// override config defaults override built-ins.
struct gen_options {
    gen_mode mode = gen_mode::adl;
    std::string kind = "interface";
    std::string folder;
    header_fields header;

    friend bool operator==(const gen_options&, const gen_options&) = default;
};

/// Recursive traversal that skips imported subtrees entirely. Packages
/// recurse into owned children; a diagram used as the traversal root
/// delegates to its containing package; parameters are never dispatched.
void walk_project(const model& m, element_id root, model_visitor& visitor);

/// Qualified-name selector match: `*` matches within one `::` segment,
/// `**` matches across segments. A bare `*` selects every project class.
bool glob_match(std::string_view pattern, std::string_view qualified_name);

/// Expands selectors against the class index, keeping project-owned classes
/// in model order. Throws selection_error("No open project") on a classless
/// model and selection_error("No selection was made.") on an empty result.
std::vector<element_id> select_classes(const model& m, std::span<const std::string> selectors);

gen_options resolve_options(const model& m, element_id class_element, const schema_set& schemas,
                            const generator_defaults& defaults);

attribute_decl lower_attribute(const model& m, element_id member, const type_map& types);

/// Absent for constructors and destructors (no RETURN_TYPE).
std::optional<operation_decl> lower_operation(const model& m, element_id member,
                                              const type_map& types);

/// `<TypeName>.adl` for every named or template-argument type that is not
/// primitive and not the class itself; first-reference order, deduplicated.
std::vector<std::string> collect_includes(const model& m, element_id class_element,
                                          const type_map& types);

/// Absent for EXTERNAL mode. generate_unit and render_unit are pure over
/// the immutable model and may run per-class in parallel.
std::optional<adl_unit> generate_unit(const model& m, element_id class_element,
                                      const gen_options& options, const type_map& types);

std::string render_unit(const adl_unit& unit);

/// Writes the rendered unit to `<out_root>/<folder>/<ClassName>.adl`,
/// creating directories and overwriting existing files. Emits the info line
/// on success; on failure emits the error line and returns nullopt, leaving
/// no partial file behind.
std::optional<std::filesystem::path> write_unit(const adl_unit& unit,
                                                const std::filesystem::path& out_root,
                                                const std::string& folder,
                                                message_sink& messages);

}  // namespace adlgen
