#include "adlgen/generator.hpp"

#include <fstream>
#include <set>
#include <system_error>

namespace adlgen {

std::string_view to_string(gen_mode mode) {
    switch (mode) {
        case gen_mode::external: return "EXTERNAL";
        case gen_mode::adlext: return "ADLEXT";
        case gen_mode::adl: return "ADL";
    }
    return "?";
}

std::optional<gen_mode> gen_mode_from_string(std::string_view text) {
    if (text == "EXTERNAL") return gen_mode::external;
    if (text == "ADLEXT") return gen_mode::adlext;
    if (text == "ADL") return gen_mode::adl;
    return std::nullopt;
}

namespace {

void walk_at(const model& m, element_id id, model_visitor& visitor, bool entry,
             std::optional<element_id> skip_diagram) {
    if (skip_diagram && *skip_diagram == id) return;
    if (!m.is_project_element(id)) return;  // imported subtrees are skipped whole
    const element& e = m.at(id);
    if (e.shape() == shape_type::parameter) return;  // read via properties, never dispatched

    m.accept(id, visitor);
    switch (e.shape()) {
        case shape_type::package:
            for (element_id child : e.children()) {
                walk_at(m, child, visitor, false, skip_diagram);
            }
            break;
        case shape_type::diagram:
            // A diagram selected as the traversal root delegates to its
            // containing package; encountered as a child it is only
            // dispatched (its class references live in packages).
            if (entry && e.parent()) {
                walk_at(m, *e.parent(), visitor, false, id);
            }
            break;
        case shape_type::class_:
            for (element_id member : m.members(id)) {
                walk_at(m, member, visitor, false, skip_diagram);
            }
            break;
        default:
            break;
    }
}

std::vector<std::string_view> split_on(std::string_view text, std::string_view sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t hit = text.find(sep, pos);
        if (hit == std::string_view::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, hit - pos));
        pos = hit + sep.size();
    }
}

bool segment_match(std::string_view pat, std::string_view name) {
    if (pat.empty()) return name.empty();
    if (pat.front() == '*')
        return segment_match(pat.substr(1), name) ||
               (!name.empty() && segment_match(pat, name.substr(1)));
    if (name.empty()) return false;
    if (pat.front() == '?' || pat.front() == name.front())
        return segment_match(pat.substr(1), name.substr(1));
    return false;
}

bool segments_match(std::span<const std::string_view> pat,
                    std::span<const std::string_view> name) {
    if (pat.empty()) return name.empty();
    if (pat.front() == "**")
        return segments_match(pat.subspan(1), name) ||
               (!name.empty() && segments_match(pat, name.subspan(1)));
    if (name.empty()) return false;
    return segment_match(pat.front(), name.front()) &&
           segments_match(pat.subspan(1), name.subspan(1));
}

/// All classes in model (document) order.
void collect_classes(const model& m, element_id id, std::vector<element_id>& out) {
    const element& e = m.at(id);
    if (e.shape() == shape_type::class_) {
        out.push_back(id);
        return;
    }
    if (e.shape() != shape_type::package) return;
    for (element_id child : e.children()) {
        if (m.at(child).parent() == std::optional<element_id>(id)) {
            collect_classes(m, child, out);
        }
    }
}

}  // namespace

void walk_project(const model& m, element_id root, model_visitor& visitor) {
    walk_at(m, root, visitor, true, std::nullopt);
}

bool glob_match(std::string_view pattern, std::string_view qualified_name) {
    if (pattern == "*") return true;  // bare star selects everything
    std::vector<std::string_view> pat = split_on(pattern, "::");
    std::vector<std::string_view> name = split_on(qualified_name, "::");
    return segments_match(pat, name);
}

std::vector<element_id> select_classes(const model& m,
                                       std::span<const std::string> selectors) {
    if (m.class_index().empty()) throw selection_error("No open project");

    std::vector<element_id> all;
    for (element_id root : m.roots()) collect_classes(m, root, all);

    std::vector<element_id> selected;
    for (element_id id : all) {
        if (!m.is_project_element(id)) continue;
        std::string qualified = m.qualified_name(id);
        for (const std::string& pattern : selectors) {
            if (glob_match(pattern, qualified)) {
                selected.push_back(id);
                break;
            }
        }
    }
    if (selected.empty()) throw selection_error("No selection was made.");
    return selected;
}

gen_options resolve_options(const model& m, element_id class_element, const schema_set& schemas,
                            const generator_defaults& defaults) {
    const element& e = m.at(class_element);
    if (e.shape() != shape_type::class_)
        throw shape_error("options resolve on CLASS elements only");

    auto pick = [&](std::string_view key) -> std::optional<std::string> {
        if (auto v = e.property(key)) return std::string(*v);
        if (const property_schema* s = schemas.find(key, shape_type::class_)) {
            if (s->default_value) return *s->default_value;
        }
        return std::nullopt;
    };

    gen_options options;
    options.header = defaults.header;

    if (auto v = pick(prop::adl_enabled)) {
        if (auto bad = validate_value(schemas, shape_type::class_, prop::adl_enabled, *v))
            throw validation_error(bad->message());
        auto mode = gen_mode_from_string(*v);
        if (!mode)
            throw validation_error(
                violation{std::string(prop::adl_enabled), *v, {"EXTERNAL", "ADLEXT", "ADL"}}
                    .message());
        options.mode = *mode;
    }
    if (auto v = pick(prop::adl_interface)) {
        if (auto bad = validate_value(schemas, shape_type::class_, prop::adl_interface, *v))
            throw validation_error(bad->message());
        options.kind = *v;
    }
    if (auto v = pick(prop::adl_folder)) {
        options.folder = *v;
    }
    return options;
}

attribute_decl lower_attribute(const model& m, element_id member, const type_map& types) {
    const element& e = m.at(member);
    if (e.shape() != shape_type::attribute)
        throw shape_error("lower_attribute requires an ATTRIBUTE element");

    attribute_decl decl;
    decl.name = std::string(e.name());
    decl.visibility = std::string(e.property(prop::visibility).value_or("private"));
    decl.persistent = e.has_property(prop::adl_persistent);
    decl.readonly = e.has_property(prop::adl_readonly);
    try {
        decl.type = normalize_type(*e.property(prop::type), types).adl_spelling;
    } catch (const type_error& err) {
        throw type_error("attribute '" + decl.name + "': " + err.what());
    }
    return decl;
}

std::optional<operation_decl> lower_operation(const model& m, element_id member,
                                              const type_map& types) {
    const element& e = m.at(member);
    if (e.shape() != shape_type::operation)
        throw shape_error("lower_operation requires an OPERATION element");

    // Constructors and destructors carry no RETURN_TYPE and have no ADL
    // description.
    auto return_type = e.property(prop::return_type);
    if (!return_type) return std::nullopt;

    operation_decl decl;
    decl.name = std::string(e.name());
    decl.visibility = std::string(e.property(prop::visibility).value_or("private"));
    try {
        decl.return_type = normalize_type(*return_type, types).adl_spelling;
        for (element_id child : e.children()) {
            const element& p = m.at(child);
            if (p.shape() != shape_type::parameter) continue;
            operation_param param;
            param.name = std::string(p.name());
            param.type = normalize_type(*p.property(prop::type), types).adl_spelling;
            decl.params.push_back(std::move(param));
        }
    } catch (const type_error& err) {
        throw type_error("operation '" + decl.name + "': " + err.what());
    }
    return decl;
}

namespace {

void include_targets(const type_ref& t, std::string_view self, std::vector<std::string>& out,
                     std::set<std::string>& seen) {
    if (t.kind == type_ref::form::named) {
        std::string target(unqualified_name(t.name));
        if (target != self && seen.insert(target).second) {
            out.push_back(target + ".adl");
        }
    }
    // Template heads never contribute; their arguments do.
    for (const type_ref& arg : t.args) include_targets(arg, self, out, seen);
}

}  // namespace

std::vector<std::string> collect_includes(const model& m, element_id class_element,
                                          const type_map& types) {
    const element& cls = m.at(class_element);
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::string_view self = cls.name();

    for (element_id member : m.members(class_element)) {
        const element& e = m.at(member);
        if (e.shape() == shape_type::attribute) {
            include_targets(normalize_type(*e.property(prop::type), types), self, out, seen);
        } else if (auto ret = e.property(prop::return_type)) {
            include_targets(normalize_type(*ret, types), self, out, seen);
            for (element_id child : e.children()) {
                const element& p = m.at(child);
                if (p.shape() != shape_type::parameter) continue;
                include_targets(normalize_type(*p.property(prop::type), types), self, out,
                                seen);
            }
        }
    }
    return out;
}

std::optional<adl_unit> generate_unit(const model& m, element_id class_element,
                                      const gen_options& options, const type_map& types) {
    const element& cls = m.at(class_element);
    if (cls.shape() != shape_type::class_)
        throw shape_error("ADL units are generated from CLASS elements only");
    if (!m.is_project_element(class_element))
        throw generation_error("class '" + std::string(cls.name()) +
                               "' is not a project element");

    if (options.mode == gen_mode::external) return std::nullopt;

    adl_unit unit;
    unit.class_name = std::string(cls.name());
    unit.guard = unit.class_name + "_ADL";
    unit.title = options.header.title;
    unit.author = options.header.author;
    unit.version = options.header.version;
    unit.kind = options.kind;

    if (options.mode == gen_mode::adlext) {
        unit.extern_only = true;
        return unit;
    }

    std::vector<std::string> failures;
    for (element_id member : m.members(class_element)) {
        try {
            if (m.at(member).shape() == shape_type::attribute) {
                unit.attributes.push_back(lower_attribute(m, member, types));
            } else if (auto op = lower_operation(m, member, types)) {
                unit.operations.push_back(std::move(*op));
            }
        } catch (const error& e) {
            failures.emplace_back(e.what());
        }
    }
    if (!failures.empty()) {
        std::string what = "class '" + unit.class_name + "': " +
                           std::to_string(failures.size()) + " member(s) failed";
        for (const std::string& f : failures) what += "\n  " + f;
        throw generation_error(what);
    }

    unit.includes = collect_includes(m, class_element, types);
    return unit;
}

std::string render_unit(const adl_unit& unit) {
    std::string out;
    out += "#ifndef " + unit.guard + "\n";
    out += "#define " + unit.guard + "\n";
    out += "/**\n";
    out += " * @Title:  " + unit.title + "\n";
    out += " * @Author: " + unit.author + "\n";
    out += " * @Version: " + unit.version + "\n";
    out += " */\n";
    if (!unit.extern_only) {
        for (const std::string& include : unit.includes) {
            out += "#include \"" + include + "\"\n";
        }
    }
    out += "\n";
    if (unit.extern_only) {
        out += "extern " + unit.kind + " " + unit.class_name + ";\n";
    } else {
        out += unit.kind + " " + unit.class_name + "\n";
        out += "{\n";
        out += "\n";
        for (const attribute_decl& attr : unit.attributes) {
            out += attr.render() + "\n";
        }
        for (const operation_decl& op : unit.operations) {
            out += op.render() + "\n";
        }
        out += "\n";
        out += "};\n";
    }
    out += "#endif\n";
    return out;
}

std::optional<std::filesystem::path> write_unit(const adl_unit& unit,
                                                const std::filesystem::path& out_root,
                                                const std::string& folder,
                                                message_sink& messages) {
    messages.info("ADL generation for class " + unit.class_name);

    auto fail = [&](const std::string& cause) -> std::optional<std::filesystem::path> {
        messages.error("*** ERROR(Text): can't handle adl file for class " + unit.class_name +
                       " " + cause);
        return std::nullopt;
    };

    std::filesystem::path dir = folder.empty() ? out_root : out_root / folder;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return fail(dir.string() + ": " + ec.message());

    std::filesystem::path target = dir / (unit.class_name + ".adl");
    {
        std::ofstream out(target, std::ios::binary | std::ios::trunc);
        if (!out) return fail(target.string() + ": cannot open for writing");
        out << render_unit(unit);
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(target, ec);  // no partial file
            return fail(target.string() + ": write failed");
        }
    }
    return target;
}

}  // namespace adlgen
