#include "adlgen/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace adlgen {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct logical_line {
    std::string text;
    std::size_t line = 1;  // first physical line
};

std::vector<logical_line> join_continuations(std::string_view text) {
    std::vector<logical_line> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        ++lineno;

        std::string_view body = raw;
        std::size_t ws = 0;
        while (ws < body.size() && (body[ws] == ' ' || body[ws] == '\t')) ++ws;
        if (ws < body.size() && body[ws] == '\\' && !out.empty()) {
            out.back().text += body.substr(ws + 1);
        } else if (!trim(raw).empty()) {
            out.push_back({std::string(raw), lineno});
        }

        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

class payload_parser {
public:
    payload_parser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

    enum_payload parse() {
        expect('(');
        expect('{');
        enum_payload payload;
        payload.values = parse_list("values");
        skip_ws();
        if (peek() == ',') {
            ++pos_;
            payload.names = parse_list("names");
        } else {
            payload.names = payload.values;
        }
        expect('}');
        expect(')');
        skip_ws();
        if (pos_ != s_.size()) fail("trailing text after enumeration payload");
        if (payload.values.size() != payload.names.size())
            fail("values/names length mismatch");
        return payload;
    }

private:
    [[noreturn]] void fail(const std::string& what) { throw parse_error(what, line_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "' in enumeration payload");
        ++pos_;
    }

    std::string parse_word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string parse_string() {
        if (peek() != '"') fail("expected a quoted string");
        ++pos_;
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
            out += s_[pos_++];
        }
        if (pos_ >= s_.size()) fail("unterminated string");
        ++pos_;  // closing quote
        return out;
    }

    std::vector<std::string> parse_list(std::string_view keyword) {
        std::string word = parse_word();
        if (word != keyword) fail("expected '" + std::string(keyword) + " :='");
        skip_ws();
        if (pos_ + 1 >= s_.size() || s_[pos_] != ':' || s_[pos_ + 1] != '=')
            fail("expected ':=' after '" + std::string(keyword) + "'");
        pos_ += 2;
        expect('{');
        std::vector<std::string> items;
        if (peek() != '}') {
            items.push_back(parse_string());
            while (peek() == ',') {
                ++pos_;
                items.push_back(parse_string());
            }
        }
        expect('}');
        return items;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::optional<shape_type> shape_for_segment(std::string_view segment) {
    if (segment == "Class") return shape_type::class_;
    if (segment == "Attribute") return shape_type::attribute;
    if (segment == "Operation") return shape_type::operation;
    if (segment == "Package") return shape_type::package;
    if (segment == "Diagram") return shape_type::diagram;
    if (segment == "Parameter") return shape_type::parameter;
    return std::nullopt;
}

std::vector<std::string_view> split_segments(std::string_view path) {
    std::vector<std::string_view> segs;
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = path.find('.', pos);
        if (dot == std::string_view::npos) {
            segs.push_back(path.substr(pos));
            break;
        }
        segs.push_back(path.substr(pos, dot - pos));
        pos = dot + 1;
    }
    return segs;
}

}  // namespace

std::vector<config_entry> parse_config(std::string_view text) {
    std::vector<config_entry> entries;
    for (const logical_line& line : join_continuations(text)) {
        std::string_view body = trim(line.text);
        if (body.empty() || body.front() == '#') continue;

        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            throw parse_error("expected 'keyPath = value'", line.line);

        config_entry entry;
        entry.key_path = std::string(trim(body.substr(0, eq)));
        if (entry.key_path.empty())
            throw parse_error("empty key path", line.line);
        for (std::string_view seg : split_segments(entry.key_path)) {
            if (trim(seg).empty())
                throw parse_error("empty segment in key path '" + entry.key_path + "'",
                                  line.line);
        }

        std::string_view value = trim(body.substr(eq + 1));
        if (!value.empty() && value.front() == '(') {
            entry.enumeration = payload_parser(value, line.line).parse();
        } else {
            entry.scalar = std::string(value);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string render_config(std::span<const config_entry> entries) {
    std::ostringstream out;
    for (const config_entry& e : entries) {
        out << e.key_path << " =";
        if (e.enumeration) {
            out << " ( { values := {";
            for (std::size_t i = 0; i < e.enumeration->values.size(); ++i) {
                if (i) out << ',';
                out << quote(e.enumeration->values[i]);
            }
            out << "}, names := {";
            for (std::size_t i = 0; i < e.enumeration->names.size(); ++i) {
                if (i) out << ',';
                out << quote(e.enumeration->names[i]);
            }
            out << "} } )";
        } else if (!e.scalar.empty()) {
            out << ' ' << e.scalar;
        }
        out << '\n';
    }
    return out.str();
}

std::string violation::message() const {
    std::string out = "value \"" + offered + "\" is not allowed for " + key;
    out += "; expected one of {";
    for (std::size_t i = 0; i < allowed.size(); ++i) {
        if (i) out += ", ";
        out += allowed[i];
    }
    out += "}";
    return out;
}

schema_set schema_set::builtins() {
    schema_set set;

    property_schema enabled;
    enabled.key = std::string(prop::adl_enabled);
    enabled.applies_to = {shape_type::class_};
    enabled.allowed = {{"EXTERNAL", "ADLEXT", "ADL"}};
    enabled.display_names = {{"Explicit extern", "Extern in .adl", "Full ADL"}};
    set.schemas_.emplace(enabled.key, std::move(enabled));

    property_schema interface;
    interface.key = std::string(prop::adl_interface);
    interface.applies_to = {shape_type::class_};
    interface.allowed = {{"interface", "DataObject", "ContainedObject"}};
    interface.display_names = {{"interface", "DataObject", "ContainedObject"}};
    set.schemas_.emplace(interface.key, std::move(interface));

    property_schema folder;
    folder.key = std::string(prop::adl_folder);
    folder.applies_to = {shape_type::class_};
    set.schemas_.emplace(folder.key, std::move(folder));

    return set;
}

void schema_set::apply(const config_entry& entry) {
    std::vector<std::string_view> segs = split_segments(entry.key_path);

    bool label_entry = segs.size() >= 2 && segs.back() == "name" &&
                       is_valid_property_key(segs[segs.size() - 2]);
    std::string_view key = label_entry ? segs[segs.size() - 2] : segs.back();
    if (!is_valid_property_key(key)) return;  // not a property path; ignored

    auto [it, inserted] = schemas_.try_emplace(std::string(key));
    property_schema& schema = it->second;
    if (inserted) schema.key = std::string(key);

    std::set<shape_type> shapes;
    for (std::string_view seg : segs) {
        if (auto s = shape_for_segment(seg)) shapes.insert(*s);
    }
    if (inserted) {
        schema.applies_to = shapes;
    } else if (shapes.empty()) {
        schema.applies_to.clear();  // no shape segment: applies everywhere
    } else {
        schema.applies_to.insert(shapes.begin(), shapes.end());
    }

    if (label_entry) {
        schema.label = entry.scalar;
        return;
    }

    if (entry.enumeration) {
        schema.allowed = entry.enumeration->values;
        schema.display_names = entry.enumeration->names;
    } else if (!entry.scalar.empty()) {
        schema.default_value = entry.scalar;
    }

    if (schema.allowed && schema.default_value &&
        std::find(schema.allowed->begin(), schema.allowed->end(), *schema.default_value) ==
            schema.allowed->end()) {
        throw config_error("default \"" + *schema.default_value + "\" for " + schema.key +
                           " is outside its allowed values");
    }
}

const property_schema* schema_set::find(std::string_view key) const {
    auto it = schemas_.find(key);
    return it == schemas_.end() ? nullptr : &it->second;
}

const property_schema* schema_set::find(std::string_view key, shape_type shape) const {
    const property_schema* s = find(key);
    if (!s) return nullptr;
    if (!s->applies_to.empty() && !s->applies_to.contains(shape)) return nullptr;
    return s;
}

std::optional<violation> validate_value(const schema_set& schemas, shape_type shape,
                                        std::string_view key, std::string_view value) {
    const property_schema* s = schemas.find(key, shape);
    if (!s || !s->allowed) return std::nullopt;
    if (std::find(s->allowed->begin(), s->allowed->end(), value) != s->allowed->end())
        return std::nullopt;
    return violation{std::string(key), std::string(value), *s->allowed};
}

void config_set::apply(const config_entry& entry) {
    const std::string& path = entry.key_path;
    if (path.starts_with("adl.header.") || path.starts_with("adl.typemap.")) {
        if (entry.enumeration)
            throw config_error("entry '" + path + "' expects a scalar value");
        if (path == "adl.header.title") {
            defaults.header.title = entry.scalar;
        } else if (path == "adl.header.author") {
            defaults.header.author = entry.scalar;
        } else if (path == "adl.header.version") {
            defaults.header.version = entry.scalar;
        } else if (path.starts_with("adl.typemap.")) {
            defaults.typemap.set(path.substr(std::string_view("adl.typemap.").size()),
                                 entry.scalar);
        } else {
            throw config_error("unknown header entry '" + path + "'");
        }
        return;
    }
    schemas.apply(entry);
}

void config_set::apply(std::span<const config_entry> entries) {
    for (const config_entry& e : entries) apply(e);
}

config_set load_config_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw config_error("config directory '" + dir.string() + "' is not readable");
    }

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    config_set set;
    for (const std::filesystem::path& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw config_error("cannot read config file", file.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        try {
            set.apply(parse_config(buf.str()));
        } catch (const parse_error& e) {
            throw config_error(e.what(), file.string(), e.line());
        } catch (const config_error& e) {
            if (!e.file().empty()) throw;
            throw config_error(e.what(), file.string());
        }
    }
    return set;
}

type_map parse_typemap(std::string_view text) {
    type_map map = type_map::defaults();
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        ++lineno;
        std::string_view body = trim(raw);
        if (!body.empty() && body.front() != '#') {
            std::size_t eq = body.find('=');
            if (eq == std::string_view::npos)
                throw parse_error("expected 'cppType = adlType'", lineno);
            std::string cpp(trim(body.substr(0, eq)));
            std::string adl(trim(body.substr(eq + 1)));
            if (cpp.empty() || adl.empty())
                throw parse_error("expected 'cppType = adlType'", lineno);
            map.set(std::move(cpp), std::move(adl));
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return map;
}

}  // namespace adlgen
