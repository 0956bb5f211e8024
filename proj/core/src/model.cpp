#include "adlgen/model.hpp"

#include <algorithm>
#include <sstream>

#include "adlgen/config.hpp"

namespace adlgen {

std::string_view to_string(shape_type shape) {
    switch (shape) {
        case shape_type::package: return "PACKAGE";
        case shape_type::diagram: return "DIAGRAM";
        case shape_type::class_: return "CLASS";
        case shape_type::operation: return "OPERATION";
        case shape_type::attribute: return "ATTRIBUTE";
        case shape_type::parameter: return "PARAMETER";
    }
    return "?";
}

std::optional<shape_type> shape_from_string(std::string_view text) {
    if (text == "PACKAGE") return shape_type::package;
    if (text == "DIAGRAM") return shape_type::diagram;
    if (text == "CLASS") return shape_type::class_;
    if (text == "OPERATION") return shape_type::operation;
    if (text == "ATTRIBUTE") return shape_type::attribute;
    if (text == "PARAMETER") return shape_type::parameter;
    return std::nullopt;
}

bool is_valid_property_key(std::string_view key) {
    if (key.empty() || key.front() < 'A' || key.front() > 'Z') return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

bool is_flag_property(std::string_view key) {
    return key == prop::adl_persistent || key == prop::adl_readonly;
}

std::optional<std::string_view> element::property(std::string_view key) const {
    auto it = properties_.find(key);
    if (it == properties_.end()) return std::nullopt;
    return std::string_view(it->second);
}

bool element::has_property(std::string_view key) const {
    return properties_.contains(key);
}

std::string_view element::name() const {
    return property(prop::name).value_or(std::string_view{});
}

void model_visitor::visit_package(const model&, const element&) {}
void model_visitor::visit_diagram(const model&, const element&) {}
void model_visitor::visit_node(const model&, const element&) {}
void model_visitor::visit_member(const model&, const element&) {}

namespace {

bool child_shape_legal(shape_type parent, shape_type child) {
    switch (parent) {
        case shape_type::package:
            return child == shape_type::package || child == shape_type::diagram ||
                   child == shape_type::class_;
        case shape_type::class_:
            return child == shape_type::operation || child == shape_type::attribute;
        case shape_type::operation:
            return child == shape_type::parameter;
        default:
            return false;
    }
}

}  // namespace

element_id model::create(shape_type shape, std::optional<element_id> parent,
                         std::string_view name) {
    element e;
    e.id_ = element_id{static_cast<std::uint32_t>(elements_.size())};
    e.shape_ = shape;
    e.parent_ = parent;
    e.properties_.emplace(prop::shape_type, std::string(to_string(shape)));
    e.properties_.emplace(prop::name, std::string(name));
    elements_.push_back(std::move(e));
    if (parent) {
        mutable_at(*parent).children_.push_back(elements_.back().id_);
    } else {
        roots_.push_back(elements_.back().id_);
    }
    return elements_.back().id_;
}

element_id model::add_package(std::string_view name) {
    return create(shape_type::package, std::nullopt, name);
}

element_id model::add_package(element_id parent, std::string_view name) {
    check_contains(parent);
    if (!child_shape_legal(at(parent).shape(), shape_type::package))
        throw shape_error("a package can only be added to a package");
    return create(shape_type::package, parent, name);
}

element_id model::add_diagram(element_id parent, std::string_view name) {
    check_contains(parent);
    if (!child_shape_legal(at(parent).shape(), shape_type::diagram))
        throw shape_error("a diagram can only be added to a package");
    return create(shape_type::diagram, parent, name);
}

element_id model::add_class(element_id parent, std::string_view name) {
    check_contains(parent);
    if (!child_shape_legal(at(parent).shape(), shape_type::class_))
        throw shape_error("a class can only be added to a package");
    element_id id = create(shape_type::class_, parent, name);
    std::string qualified = qualified_name(id);
    auto [it, inserted] = class_index_.emplace(qualified, id);
    if (!inserted) {
        throw name_collision_error("duplicate class name '" + qualified + "' in model");
    }
    return id;
}

element_id model::add_operation(element_id parent, std::string_view name,
                                std::string_view visibility) {
    check_contains(parent);
    if (!child_shape_legal(at(parent).shape(), shape_type::operation))
        throw shape_error("an operation can only be added to a class");
    element_id id = create(shape_type::operation, parent, name);
    mutable_at(id).properties_.emplace(prop::visibility, std::string(visibility));
    return id;
}

element_id model::add_attribute(element_id parent, std::string_view name, std::string_view type,
                                std::string_view visibility) {
    check_contains(parent);
    if (!child_shape_legal(at(parent).shape(), shape_type::attribute))
        throw shape_error("an attribute can only be added to a class");
    element_id id = create(shape_type::attribute, parent, name);
    element& e = mutable_at(id);
    e.properties_.emplace(prop::type, std::string(type));
    e.properties_.emplace(prop::visibility, std::string(visibility));
    return id;
}

element_id model::add_parameter(element_id parent, std::string_view name, std::string_view type) {
    check_contains(parent);
    if (!child_shape_legal(at(parent).shape(), shape_type::parameter))
        throw shape_error("a parameter can only be added to an operation");
    element_id id = create(shape_type::parameter, parent, name);
    mutable_at(id).properties_.emplace(prop::type, std::string(type));
    return id;
}

void model::add_diagram_reference(element_id diagram, element_id class_element) {
    check_contains(diagram);
    check_contains(class_element);
    if (at(diagram).shape() != shape_type::diagram)
        throw shape_error("diagram references can only be added to a diagram");
    if (at(class_element).shape() != shape_type::class_)
        throw shape_error("diagrams reference classes only");
    mutable_at(diagram).children_.push_back(class_element);
}

bool model::contains(element_id id) const {
    return id.index < elements_.size();
}

void model::check_contains(element_id id) const {
    if (!contains(id)) {
        throw lookup_error("unknown element id " + std::to_string(id.index));
    }
}

const element& model::at(element_id id) const {
    check_contains(id);
    return elements_[id.index];
}

element& model::mutable_at(element_id id) {
    check_contains(id);
    return elements_[id.index];
}

std::optional<element_id> model::find_class(std::string_view qualified_name) const {
    auto it = class_index_.find(qualified_name);
    if (it == class_index_.end()) return std::nullopt;
    return it->second;
}

std::string model::qualified_name(element_id id) const {
    check_contains(id);
    std::vector<std::string_view> parts;
    const element* e = &at(id);
    parts.push_back(e->name());
    while (e->parent()) {
        e = &at(*e->parent());
        // Per-path file wrappers carry FILE and do not qualify names.
        if (e->shape() == shape_type::package && !e->has_property(prop::file) &&
            !e->name().empty()) {
            parts.push_back(e->name());
        }
    }
    std::string out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (!out.empty()) out += "::";
        out += *it;
    }
    return out;
}

std::optional<std::string_view> model::get_property(element_id id, std::string_view key) const {
    return at(id).property(key);
}

bool model::has_property(element_id id, std::string_view key) const {
    return at(id).has_property(key);
}

void model::put_property(element_id id, std::string_view key,
                         std::optional<std::string_view> value, const schema_set* schemas) {
    element& e = mutable_at(id);
    if (!is_valid_property_key(key)) {
        throw validation_error("invalid property key '" + std::string(key) + "'");
    }
    if (key == prop::shape_type || key == prop::name) {
        throw validation_error("property " + std::string(key) +
                               " is fixed at element creation");
    }
    if (!value && key == prop::type &&
        (e.shape() == shape_type::attribute || e.shape() == shape_type::parameter)) {
        throw validation_error("attributes and parameters always carry TYPE");
    }
    if (value && schemas) {
        if (auto v = validate_value(*schemas, e.shape(), key, *value)) {
            throw validation_error(v->message());
        }
    }
    if (!value) {
        e.properties_.erase(std::string(key));
        return;
    }
    // Flag properties store empty text and are tested only via presence.
    std::string stored = is_flag_property(key) ? std::string() : std::string(*value);
    e.properties_[std::string(key)] = std::move(stored);
}

std::vector<element_id> model::members(element_id class_element) const {
    const element& e = at(class_element);
    if (e.shape() != shape_type::class_) {
        throw shape_error("members() requires a CLASS element, got " +
                          std::string(to_string(e.shape())));
    }
    std::vector<element_id> out;
    for (element_id child : e.children()) {
        shape_type s = at(child).shape();
        if (s == shape_type::operation || s == shape_type::attribute) out.push_back(child);
    }
    return out;
}

void model::accept(element_id id, model_visitor& visitor) const {
    const element& e = at(id);
    switch (e.shape()) {
        case shape_type::package: visitor.visit_package(*this, e); return;
        case shape_type::diagram: visitor.visit_diagram(*this, e); return;
        case shape_type::class_: visitor.visit_node(*this, e); return;
        case shape_type::operation:
        case shape_type::attribute: visitor.visit_member(*this, e); return;
        case shape_type::parameter:
            throw dispatch_error("PARAMETER elements are not dispatched; read them "
                                 "through the property map");
    }
}

bool model::is_project_element(element_id id) const {
    auto part = at(id).property(prop::model_part);
    return part && *part == model_part_project;
}

namespace {

void dump_element(const model& m, element_id id, int depth, std::ostringstream& out) {
    const element& e = m.at(id);
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    out << to_string(e.shape()) << ' ' << (e.name().empty() ? "-" : e.name()) << " [";
    bool first = true;
    for (const auto& [key, value] : e.properties()) {
        if (!first) out << ", ";
        first = false;
        out << key << '=' << value;
    }
    out << "]\n";
    for (element_id child : e.children()) {
        if (m.at(child).parent() == std::optional<element_id>(id)) {
            dump_element(m, child, depth + 1, out);
        }
    }
}

}  // namespace

std::string model::dump() const {
    std::ostringstream out;
    for (element_id root : roots_) {
        dump_element(*this, root, 0, out);
    }
    return out.str();
}

std::string model::dump(element_id root) const {
    check_contains(root);
    std::ostringstream out;
    dump_element(*this, root, 0, out);
    return out.str();
}

}  // namespace adlgen
