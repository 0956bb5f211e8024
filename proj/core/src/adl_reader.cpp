#include "adlgen/adl_reader.hpp"

#include <algorithm>
#include <cctype>

#include "adlgen/config.hpp"
#include "adlgen/errors.hpp"

namespace adlgen {

std::string_view to_string(diagnostic::severity sev) {
    return sev == diagnostic::severity::error ? "ERROR" : "WARNING";
}

std::string format_diagnostic(std::string_view file, const diagnostic& d) {
    return std::string(file) + ":" + std::to_string(d.line) + ": " +
           std::string(to_string(d.sev)) + ": " + d.message;
}

namespace {

std::string_view rtrim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    return rtrim(s);
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    bool in_ws = false;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            in_ws = !out.empty();
            continue;
        }
        if (in_ws) out += ' ';
        in_ws = false;
        out += c;
    }
    return out;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos > start) out.push_back(s.substr(start, pos - start));
    }
    return out;
}

bool is_visibility(std::string_view w) {
    return w == "public" || w == "protected" || w == "private";
}

class adl_parser {
public:
    adl_parser(std::string_view text, adl_layout& layout) : layout_(layout) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line =
                eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines_.push_back(line);
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
    }

    adl_unit run() {
        adl_unit unit;

        layout_.guard_line = expect_guard(unit);
        parse_header_comment(unit);
        parse_includes(unit);

        std::size_t body_line = line_number();
        std::string_view body = expect_line("a declaration");
        std::vector<std::string_view> w = words(body);
        if (!w.empty() && w[0] == "extern") {
            if (w.size() != 3 || w[2].empty() || w[2].back() != ';')
                fail(body_line, "expected 'extern <kind> <name>;'");
            unit.extern_only = true;
            unit.kind = std::string(w[1]);
            unit.class_name = std::string(w[2].substr(0, w[2].size() - 1));
            layout_.kind_line = body_line;
        } else {
            if (w.size() != 2) fail(body_line, "expected '<kind> <className>'");
            unit.kind = std::string(w[0]);
            unit.class_name = std::string(w[1]);
            layout_.kind_line = body_line;

            std::size_t brace_line = line_number();
            if (trim(expect_line("'{'")) != "{") fail(brace_line, "expected '{'");
            parse_members(unit);
        }

        std::size_t end_line = line_number();
        if (trim(expect_line("'#endif'")) != "#endif") fail(end_line, "expected '#endif'");
        skip_blank();
        if (i_ < lines_.size()) fail(i_ + 1, "unexpected content after '#endif'");
        return unit;
    }

private:
    [[noreturn]] void fail(std::size_t line, const std::string& what) {
        throw parse_error(what, line == 0 ? 1 : line);
    }

    void skip_blank() {
        while (i_ < lines_.size() && trim(lines_[i_]).empty()) ++i_;
    }

    /// 1-based number of the next non-blank line.
    std::size_t line_number() {
        skip_blank();
        return i_ < lines_.size() ? i_ + 1 : lines_.size();
    }

    std::string_view expect_line(const std::string& what) {
        skip_blank();
        if (i_ >= lines_.size()) fail(lines_.size(), "unexpected end of file, expected " + what);
        return lines_[i_++];
    }

    std::string_view peek_line() {
        skip_blank();
        return i_ < lines_.size() ? lines_[i_] : std::string_view{};
    }

    std::size_t expect_guard(adl_unit& unit) {
        std::size_t ifndef_line = line_number();
        std::vector<std::string_view> w1 = words(expect_line("'#ifndef'"));
        if (w1.size() != 2 || w1[0] != "#ifndef")
            fail(ifndef_line, "expected '#ifndef <guard>'");

        std::size_t define_line = line_number();
        std::vector<std::string_view> w2 = words(expect_line("'#define'"));
        if (w2.size() != 2 || w2[0] != "#define")
            fail(define_line, "expected '#define <guard>'");
        if (w1[1] != w2[1])
            fail(define_line, "include guard mismatch: '" + std::string(w1[1]) + "' vs '" +
                                  std::string(w2[1]) + "'");
        unit.guard = std::string(w1[1]);
        return ifndef_line;
    }

    void parse_header_comment(adl_unit& unit) {
        if (trim(peek_line()) != "/**") return;
        std::size_t start = line_number();
        ++i_;
        while (i_ < lines_.size()) {
            std::string_view line = trim(lines_[i_]);
            ++i_;
            if (line == "*/") return;
            take_field(line, "* @Title:", 2, unit.title);
            take_field(line, "* @Author:", 1, unit.author);
            take_field(line, "* @Version:", 1, unit.version);
        }
        fail(start, "unterminated comment");
    }

    /// Captures "* @Key:<pad><value>". The generator pads @Title: with two
    /// spaces and the others with one; exactly that many are stripped.
    static void take_field(std::string_view line, std::string_view prefix, std::size_t pad,
                           std::string& out) {
        if (!line.starts_with(prefix)) return;
        std::string_view rest = line.substr(prefix.size());
        for (std::size_t k = 0; k < pad && !rest.empty() && rest.front() == ' '; ++k) {
            rest.remove_prefix(1);
        }
        out = std::string(rest);
    }

    void parse_includes(adl_unit& unit) {
        while (true) {
            std::string_view line = trim(peek_line());
            if (!line.starts_with("#include")) return;
            std::size_t lineno = line_number();
            ++i_;
            std::size_t open = line.find('"');
            std::size_t close = open == std::string_view::npos
                                    ? std::string_view::npos
                                    : line.find('"', open + 1);
            if (close == std::string_view::npos || trim(line.substr(close + 1)) != "")
                fail(lineno, "expected '#include \"<file>\"'");
            unit.includes.emplace_back(line.substr(open + 1, close - open - 1));
            layout_.include_lines.push_back(lineno);
        }
    }

    void parse_members(adl_unit& unit) {
        while (true) {
            std::size_t lineno = line_number();
            std::string_view line = trim(expect_line("a member declaration or '};'"));
            if (line == "};") return;
            if (line.find('(') != std::string_view::npos) {
                unit.operations.push_back(parse_operation(line, lineno));
                layout_.operation_lines.push_back(lineno);
            } else {
                unit.attributes.push_back(parse_attribute(line, lineno));
                layout_.attribute_lines.push_back(lineno);
            }
        }
    }

    attribute_decl parse_attribute(std::string_view line, std::size_t lineno) {
        if (line.empty() || line.back() != ';') fail(lineno, "missing ';'");
        std::string_view body = rtrim(line.substr(0, line.size() - 1));

        attribute_decl decl;
        auto eat_word = [&](std::string_view word) {
            if (body.starts_with(word) && body.size() > word.size() &&
                body[word.size()] == ' ') {
                body.remove_prefix(word.size() + 1);
                return true;
            }
            return false;
        };
        decl.persistent = eat_word("persistent");
        decl.readonly = eat_word("readonly");

        std::vector<std::string_view> w = words(body);
        if (w.size() < 4 || !is_visibility(w[0]) || w[1] != "attribute")
            fail(lineno, "expected '<visibility> attribute <type> <name>;'");
        decl.visibility = std::string(w[0]);
        decl.name = std::string(w.back());
        if (!is_identifier(decl.name)) fail(lineno, "invalid attribute name '" + decl.name + "'");

        std::size_t type_begin = w[2].data() - body.data();
        std::size_t type_end = w[w.size() - 2].data() + w[w.size() - 2].size() - body.data();
        decl.type = collapse_ws(body.substr(type_begin, type_end - type_begin));
        return decl;
    }

    operation_decl parse_operation(std::string_view line, std::size_t lineno) {
        if (!line.ends_with(");")) fail(lineno, "expected an operation ending in ');'");
        std::size_t lparen = line.find('(');
        std::string_view head = rtrim(line.substr(0, lparen));
        std::string_view args = line.substr(lparen + 1, line.size() - lparen - 3);

        std::vector<std::string_view> w = words(head);
        if (w.size() < 3 || !is_visibility(w[0]))
            fail(lineno, "expected '<visibility> <returnType> <name>(...);'");

        operation_decl decl;
        decl.visibility = std::string(w[0]);
        decl.name = std::string(w.back());
        if (!is_identifier(decl.name)) fail(lineno, "invalid operation name '" + decl.name + "'");
        std::size_t ret_begin = w[1].data() - head.data();
        std::size_t ret_end = w[w.size() - 2].data() + w[w.size() - 2].size() - head.data();
        decl.return_type = collapse_ws(head.substr(ret_begin, ret_end - ret_begin));

        std::string_view rest = trim(args);
        if (!rest.empty()) {
            for (std::string_view param : split_params(rest, lineno)) {
                decl.params.push_back(parse_param(param, lineno));
            }
        }
        return decl;
    }

    std::vector<std::string_view> split_params(std::string_view args, std::size_t lineno) {
        std::vector<std::string_view> out;
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t k = 0; k < args.size(); ++k) {
            if (args[k] == '<') ++depth;
            if (args[k] == '>') --depth;
            if (args[k] == ',' && depth == 0) {
                out.push_back(args.substr(start, k - start));
                start = k + 1;
            }
        }
        if (depth != 0) fail(lineno, "unbalanced '<' in parameter list");
        out.push_back(args.substr(start));
        return out;
    }

    operation_param parse_param(std::string_view text, std::size_t lineno) {
        std::vector<std::string_view> w = words(text);
        if (w.size() < 3 || w[0] != "in")
            fail(lineno, "expected parameter form 'in <type> <name>'");
        operation_param param;
        param.name = std::string(w.back());
        if (!is_identifier(param.name))
            fail(lineno, "invalid parameter name '" + param.name + "'");
        std::string_view body = trim(text);
        std::size_t type_begin = w[1].data() - body.data();
        std::size_t type_end = w[w.size() - 2].data() + w[w.size() - 2].size() - body.data();
        param.type = collapse_ws(body.substr(type_begin, type_end - type_begin));
        return param;
    }

    std::vector<std::string_view> lines_;
    std::size_t i_ = 0;
    adl_layout& layout_;
};

}  // namespace

adl_unit parse_adl(std::string_view text) {
    adl_layout layout;
    return parse_adl(text, layout);
}

adl_unit parse_adl(std::string_view text, adl_layout& layout) {
    layout = adl_layout{};
    return adl_parser(text, layout).run();
}

std::vector<diagnostic> check_unit(const adl_unit& unit,
                                   const std::set<std::string>& sibling_files,
                                   const adl_layout* layout) {
    const property_schema* s = schema_set::builtins().find(prop::adl_interface);
    return check_unit(unit, sibling_files, *s->allowed, layout);
}

std::vector<diagnostic> check_unit(const adl_unit& unit,
                                   const std::set<std::string>& sibling_files,
                                   std::span<const std::string> allowed_kinds,
                                   const adl_layout* layout) {
    adl_layout fallback;
    const adl_layout& lay = layout ? *layout : fallback;
    auto line_of = [](const std::vector<std::size_t>& lines, std::size_t i) {
        return i < lines.size() ? lines[i] : 1;
    };

    std::vector<diagnostic> out;
    if (unit.guard != unit.class_name + "_ADL") {
        out.push_back({diagnostic::severity::error, lay.guard_line,
                       "guard '" + unit.guard + "' does not match class '" + unit.class_name +
                           "' (expected '" + unit.class_name + "_ADL')"});
    }

    std::set<std::string> seen;
    for (std::size_t i = 0; i < unit.attributes.size(); ++i) {
        if (!seen.insert(unit.attributes[i].name).second) {
            out.push_back({diagnostic::severity::error, line_of(lay.attribute_lines, i),
                           "duplicate member name '" + unit.attributes[i].name + "'"});
        }
    }
    for (std::size_t i = 0; i < unit.operations.size(); ++i) {
        if (!seen.insert(unit.operations[i].name).second) {
            out.push_back({diagnostic::severity::error, line_of(lay.operation_lines, i),
                           "duplicate member name '" + unit.operations[i].name + "'"});
        }
    }

    for (std::size_t i = 0; i < unit.includes.size(); ++i) {
        if (!sibling_files.contains(unit.includes[i])) {
            out.push_back({diagnostic::severity::warning, line_of(lay.include_lines, i),
                           "include target '" + unit.includes[i] +
                               "' not found among sibling files"});
        }
    }

    if (std::find(allowed_kinds.begin(), allowed_kinds.end(), unit.kind) ==
        allowed_kinds.end()) {
        out.push_back({diagnostic::severity::warning, lay.kind_line,
                       "kind '" + unit.kind + "' is not an ADLINTERFACE value"});
    }
    return out;
}

}  // namespace adlgen
