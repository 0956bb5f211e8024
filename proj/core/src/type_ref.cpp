#include "adlgen/type_ref.hpp"

#include <array>
#include <cctype>

namespace adlgen {

type_map type_map::defaults() {
    type_map m;
    m.set("int", "long");
    m.set("unsigned int", "unsigned long");
    return m;
}

void type_map::set(std::string cpp_spelling, std::string adl_spelling) {
    entries_[std::move(cpp_spelling)] = std::move(adl_spelling);
}

std::string_view type_map::apply(std::string_view primitive) const {
    auto it = entries_.find(primitive);
    return it == entries_.end() ? primitive : std::string_view(it->second);
}

namespace {

constexpr std::array<std::string_view, 14> kPrimitiveWords = {
    "void", "bool", "char", "short", "int",  "long",     "float",
    "double", "signed", "unsigned", "wchar_t", "char8_t", "char16_t", "char32_t",
};

bool is_primitive_word(std::string_view w) {
    for (auto p : kPrimitiveWords)
        if (p == w) return true;
    return false;
}

struct type_token {
    enum kind { ident, scope, langle, rangle, comma, end };
    kind k = end;
    std::string_view text;
};

class type_lexer {
public:
    explicit type_lexer(std::string_view s) : s_(s) {}

    type_token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {type_token::end, {}};
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {type_token::ident, s_.substr(start, pos_ - start)};
        }
        if (c == ':' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ':') {
            pos_ += 2;
            return {type_token::scope, "::"};
        }
        if (c == '<') { ++pos_; return {type_token::langle, "<"}; }
        if (c == '>') { ++pos_; return {type_token::rangle, ">"}; }
        if (c == ',') { ++pos_; return {type_token::comma, ","}; }
        if (c == '*')
            throw type_error("pointer types are not supported in type '" + std::string(s_) +
                             "' (ADL carries values)");
        if (c == '&')
            throw type_error("reference types are not supported in type '" + std::string(s_) +
                             "' (ADL carries values)");
        throw type_error("unexpected character '" + std::string(1, c) + "' in type '" +
                         std::string(s_) + "'");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

class type_parser {
public:
    explicit type_parser(std::string_view s) : lex_(s), src_(s) { advance(); }

    type_ref parse_full() {
        type_ref t = parse();
        if (cur_.k != type_token::end)
            throw type_error("trailing tokens after type expression in '" + std::string(src_) +
                             "'");
        return t;
    }

private:
    void advance() { cur_ = lex_.next(); }

    type_ref parse() {
        type_ref t;
        if (cur_.k == type_token::ident && cur_.text == "const") {
            t.is_const = true;
            advance();
        }
        if (cur_.k != type_token::ident)
            throw type_error("expected a type name in '" + std::string(src_) + "'");

        if (is_primitive_word(cur_.text)) {
            std::string name(cur_.text);
            advance();
            while (cur_.k == type_token::ident && is_primitive_word(cur_.text)) {
                name += ' ';
                name += cur_.text;
                advance();
            }
            t.kind = type_ref::form::primitive;
            t.name = std::move(name);
            return t;
        }

        std::string name(cur_.text);
        advance();
        while (cur_.k == type_token::scope) {
            advance();
            if (cur_.k != type_token::ident)
                throw type_error("expected an identifier after '::' in '" + std::string(src_) +
                                 "'");
            name += "::";
            name += cur_.text;
            advance();
        }
        t.name = std::move(name);
        t.kind = type_ref::form::named;

        if (cur_.k == type_token::langle) {
            advance();
            t.kind = type_ref::form::template_app;
            t.args.push_back(parse());
            while (cur_.k == type_token::comma) {
                advance();
                t.args.push_back(parse());
            }
            if (cur_.k != type_token::rangle)
                throw type_error("unbalanced '<' in type '" + std::string(src_) + "'");
            advance();
        }
        return t;
    }

    type_lexer lex_;
    std::string_view src_;
    type_token cur_;
};

std::string render_adl(const type_ref& t, const type_map& map) {
    switch (t.kind) {
        case type_ref::form::primitive:
            return std::string(map.apply(t.name));
        case type_ref::form::named:
            return t.name;
        case type_ref::form::template_app: {
            std::string out = t.name + " <";
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                if (i) out += ", ";
                out += t.args[i].adl_spelling;
            }
            out += '>';
            return out;
        }
    }
    return {};
}

void fill_adl(type_ref& t, const type_map& map) {
    for (type_ref& arg : t.args) {
        fill_adl(arg, map);
        // Nested arguments get the normalized rendering as their spelling;
        // only the root keeps the source text.
        arg.spelling = arg.cpp_spelling();
    }
    t.adl_spelling = render_adl(t, map);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

bool is_primitive_type_name(std::string_view name) {
    if (name.empty()) return false;
    std::size_t pos = 0;
    while (pos < name.size()) {
        std::size_t space = name.find(' ', pos);
        std::string_view word =
            space == std::string_view::npos ? name.substr(pos) : name.substr(pos, space - pos);
        if (!is_primitive_word(word)) return false;
        pos = space == std::string_view::npos ? name.size() : space + 1;
    }
    return true;
}

std::string_view unqualified_name(std::string_view qualified) {
    std::size_t pos = qualified.rfind("::");
    return pos == std::string_view::npos ? qualified : qualified.substr(pos + 2);
}

std::string type_ref::cpp_spelling() const {
    std::string out = is_const ? "const " : "";
    out += name;
    if (kind == form::template_app) {
        out += '<';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ", ";
            out += args[i].cpp_spelling();
        }
        out += '>';
    }
    return out;
}

type_ref normalize_type(std::string_view spelling) {
    return normalize_type(spelling, type_map::defaults());
}

type_ref normalize_type(std::string_view spelling, const type_map& map) {
    type_ref t = type_parser(spelling).parse_full();
    t.spelling = std::string(trim(spelling));
    fill_adl(t, map);
    return t;
}

}  // namespace adlgen
