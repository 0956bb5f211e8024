#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlgen/errors.hpp"

namespace adlgen {

class schema_set;

/// Element kind discriminator. Every element stores it as the SHAPE_TYPE
/// property in addition to the typed accessor.
enum class shape_type {
    package,
    diagram,
    class_,
    operation,
    attribute,
    parameter,
};

std::string_view to_string(shape_type shape);
std::optional<shape_type> shape_from_string(std::string_view text);

/// Well-known property keys. Extension keys share the same flat namespace
/// and the same `[A-Z][A-Z0-9_]*` spelling rule.
namespace prop {
inline constexpr std::string_view shape_type = "SHAPE_TYPE";
inline constexpr std::string_view name = "NAME";
inline constexpr std::string_view type = "TYPE";
inline constexpr std::string_view return_type = "RETURN_TYPE";
inline constexpr std::string_view visibility = "VISIBILITY";
inline constexpr std::string_view model_part = "MODEL_PART";
inline constexpr std::string_view interface = "INTERFACE";
inline constexpr std::string_view extends = "EXTENDS";
inline constexpr std::string_view file = "FILE";
inline constexpr std::string_view adl_enabled = "ADLENABLED";
inline constexpr std::string_view adl_interface = "ADLINTERFACE";
inline constexpr std::string_view adl_folder = "ADLFOLDER";
inline constexpr std::string_view adl_persistent = "ADLPERSISTENT";
inline constexpr std::string_view adl_readonly = "ADLREADONLY";
}  // namespace prop

/// MODEL_PART value marking project-owned elements. Anything else (or an
/// absent MODEL_PART) is treated as imported and skipped by generation.
inline constexpr std::string_view model_part_project = "Model";

bool is_valid_property_key(std::string_view key);

/// True for ADLPERSISTENT / ADLREADONLY, which store empty text and are
/// tested only via presence.
bool is_flag_property(std::string_view key);

struct element_id {
    std::uint32_t index = 0;
    friend bool operator==(element_id, element_id) = default;
    friend auto operator<=>(element_id, element_id) = default;
};

class model;

class element {
public:
    element_id id() const { return id_; }
    shape_type shape() const { return shape_; }
    std::optional<element_id> parent() const { return parent_; }

    /// Owned children plus, for diagrams, non-owned class references.
    std::span<const element_id> children() const { return children_; }

    const std::map<std::string, std::string, std::less<>>& properties() const {
        return properties_;
    }
    std::optional<std::string_view> property(std::string_view key) const;
    bool has_property(std::string_view key) const;

    /// NAME property, empty when unset.
    std::string_view name() const;

private:
    friend class model;

    element_id id_{};
    shape_type shape_ = shape_type::package;
    std::optional<element_id> parent_;
    std::vector<element_id> children_;
    std::map<std::string, std::string, std::less<>> properties_;
};

/// Shape-directed dispatch target for model::accept. Recursing into
/// children is the visitor's responsibility.
class model_visitor {
public:
    virtual ~model_visitor() = default;

    virtual void visit_package(const model& m, const element& e);
    virtual void visit_diagram(const model& m, const element& e);
    /// Classes (and interfaces, which are classes carrying INTERFACE).
    virtual void visit_node(const model& m, const element& e);
    /// Operations and attributes.
    virtual void visit_member(const model& m, const element& e);
};

/// In-memory read-write class model. Single-writer while it is being built;
/// once construction and annotation are done it is read-only and safe to
/// share across threads.
class model {
public:
    model() = default;

    // Construction. NAME and SHAPE_TYPE are fixed at creation; the add_*
    // functions enforce child-shape legality.
    element_id add_package(std::string_view name);
    element_id add_package(element_id parent, std::string_view name);
    element_id add_diagram(element_id parent, std::string_view name);
    element_id add_class(element_id parent, std::string_view name);
    element_id add_operation(element_id parent, std::string_view name,
                             std::string_view visibility);
    element_id add_attribute(element_id parent, std::string_view name, std::string_view type,
                             std::string_view visibility);
    element_id add_parameter(element_id parent, std::string_view name, std::string_view type);

    /// Records a class on a diagram. The class stays owned by its package.
    void add_diagram_reference(element_id diagram, element_id class_element);

    bool contains(element_id id) const;
    const element& at(element_id id) const;
    std::span<const element_id> roots() const { return roots_; }
    std::size_t size() const { return elements_.size(); }

    /// Qualified-name index over classes. Packages carrying FILE (per-path
    /// wrappers created by the frontend) do not contribute to names.
    const std::map<std::string, element_id, std::less<>>& class_index() const {
        return class_index_;
    }
    std::optional<element_id> find_class(std::string_view qualified_name) const;
    std::string qualified_name(element_id id) const;

    std::optional<std::string_view> get_property(element_id id, std::string_view key) const;
    bool has_property(element_id id, std::string_view key) const;

    /// Sets, overwrites or (for an absent value) removes a property. When a
    /// schema set is supplied and a schema governs (shape, key), the value
    /// must be one of the allowed values. NAME and SHAPE_TYPE are immutable.
    void put_property(element_id id, std::string_view key,
                      std::optional<std::string_view> value,
                      const schema_set* schemas = nullptr);

    /// OPERATION and ATTRIBUTE children of a class in declaration order.
    std::vector<element_id> members(element_id class_element) const;

    /// Dispatches exactly one visitor callback chosen by shape.
    /// PARAMETER elements are not dispatched.
    void accept(element_id id, model_visitor& visitor) const;

    /// True iff MODEL_PART is present with value "Model".
    bool is_project_element(element_id id) const;

    /// Debug dump, one element per line: indent, shape, name, sorted
    /// properties. Diagram references are not re-printed.
    std::string dump() const;
    std::string dump(element_id root) const;

private:
    element_id create(shape_type shape, std::optional<element_id> parent,
                      std::string_view name);
    element& mutable_at(element_id id);
    void check_contains(element_id id) const;

    std::vector<element> elements_;
    std::vector<element_id> roots_;
    std::map<std::string, element_id, std::less<>> class_index_;
};

}  // namespace adlgen

template <>
struct std::hash<adlgen::element_id> {
    std::size_t operator()(adlgen::element_id id) const noexcept {
        return std::hash<std::uint32_t>{}(id.index);
    }
};
