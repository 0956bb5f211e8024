#include "adlgen/header_parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "adlgen/doc_comment.hpp"

namespace adlgen {

namespace {

enum class tk { ident, number, punct, str, chr, doc, end };

struct token {
    tk kind = tk::end;
    std::string_view text;
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class cpp_lexer {
public:
    explicit cpp_lexer(std::string_view src) : src_(src) {}

    std::vector<token> run() {
        std::vector<token> out;
        while (true) {
            token t = next();
            out.push_back(t);
            if (t.kind == tk::end) return out;
        }
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t line, std::size_t column) {
        throw parse_error(what, line, column);
    }

    char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

    void bump(std::size_t n = 1) {
        for (std::size_t k = 0; k < n && pos_ < src_.size(); ++k) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    token make(tk kind, std::size_t start, std::size_t start_line, std::size_t start_col) {
        return {kind, src_.substr(start, pos_ - start), start, start_line, start_col};
    }

    token next() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
                continue;
            }
            // Preprocessor lines (guards, includes, pragmas) are trivia.
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    if (src_[pos_] == '\\' && at(pos_ + 1) == '\n') bump();
                    if (src_[pos_] == '\\' && at(pos_ + 1) == '\r' && at(pos_ + 2) == '\n')
                        bump(2);
                    bump();
                }
                continue;
            }
            if (c == '/' && at(pos_ + 1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
                continue;
            }
            if (c == '/' && at(pos_ + 1) == '*') {
                bool is_doc = at(pos_ + 2) == '*' && at(pos_ + 3) != '/';
                std::size_t start = pos_, sl = line_, sc = col_;
                bump(is_doc ? 3 : 2);
                while (!(src_[pos_ - 1] == '*' && at(pos_) == '/')) {
                    if (pos_ >= src_.size()) fail("unterminated comment", sl, sc);
                    bump();
                }
                bump();  // the '/'
                if (is_doc) return make(tk::doc, start, sl, sc);
                continue;
            }
            break;
        }
        if (pos_ >= src_.size()) return {tk::end, {}, src_.size(), line_, col_};

        std::size_t start = pos_, sl = line_, sc = col_;
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                bump();
            return make(tk::ident, start, sl, sc);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_' || src_[pos_] == '.'))
                bump();
            return make(tk::number, start, sl, sc);
        }
        if (c == '"' || c == '\'') {
            char quote = c;
            bump();
            while (pos_ < src_.size() && src_[pos_] != quote) {
                if (src_[pos_] == '\\') bump();
                bump();
            }
            if (pos_ >= src_.size()) fail("unterminated literal", sl, sc);
            bump();
            return make(quote == '"' ? tk::str : tk::chr, start, sl, sc);
        }
        if (c == ':' && at(pos_ + 1) == ':') {
            bump(2);
            return make(tk::punct, start, sl, sc);
        }
        bump();
        return make(tk::punct, start, sl, sc);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

constexpr std::array<std::string_view, 14> kPrimitiveWords = {
    "void", "bool", "char", "short", "int",  "long",     "float",
    "double", "signed", "unsigned", "wchar_t", "char8_t", "char16_t", "char32_t",
};

bool is_primitive_word(std::string_view w) {
    return std::find(kPrimitiveWords.begin(), kPrimitiveWords.end(), w) !=
           kPrimitiveWords.end();
}

constexpr std::array<std::string_view, 7> kUnsupported = {
    "template", "using", "typedef", "enum", "union", "friend", "operator",
};

constexpr std::array<std::string_view, 6> kSpecifiers = {
    "virtual", "static", "inline", "explicit", "constexpr", "mutable",
};

bool is_reserved_word(std::string_view w) {
    static constexpr std::array<std::string_view, 12> kw = {
        "class",  "struct",  "namespace", "public",   "protected", "private",
        "const",  "virtual", "static",    "operator", "return",    "typedef",
    };
    return std::find(kw.begin(), kw.end(), w) != kw.end();
}

struct member_stats {
    int pure_virtual = 0;
    int plain_methods = 0;  // non-pure methods and constructors
    int attributes = 0;
};

class header_builder {
public:
    header_builder(model& m, std::string_view text, std::string_view path)
        : model_(m), text_(text), path_(path), tokens_(cpp_lexer(text).run()) {}

    parsed_header run() {
        element_id pkg = model_.add_package(std::string(path_));
        model_.put_property(pkg, prop::file, path_);
        model_.put_property(pkg, prop::model_part, model_part_project);
        parse_scope(pkg, true);
        return {pkg, source_unit{std::string(path_), std::string(text_), std::move(spans_)}};
    }

private:
    const token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const token& consume() {
        const token& t = peek();
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    bool at_punct(std::string_view p, std::size_t ahead = 0) const {
        const token& t = peek(ahead);
        return t.kind == tk::punct && t.text == p;
    }

    bool at_ident(std::string_view name) const {
        const token& t = peek();
        return t.kind == tk::ident && t.text == name;
    }

    bool accept_punct(std::string_view p) {
        if (!at_punct(p)) return false;
        consume();
        return true;
    }

    [[noreturn]] void fail(const token& t, const std::string& what) {
        std::string shown = t.kind == tk::end ? "end of file" : "'" + std::string(t.text) + "'";
        throw parse_error(what + " (got " + shown + ")", t.line, t.column);
    }

    const token& expect_punct(std::string_view p) {
        if (!at_punct(p)) fail(peek(), "expected '" + std::string(p) + "'");
        return consume();
    }

    const token& expect_ident(const std::string& what) {
        if (peek().kind != tk::ident) fail(peek(), "expected " + what);
        return consume();
    }

    const token& expect_name(const std::string& what) {
        if (peek().kind != tk::ident || is_reserved_word(peek().text))
            fail(peek(), "expected " + what);
        return consume();
    }

    void parse_scope(element_id pkg, bool top) {
        while (true) {
            const token& t = peek();
            if (t.kind == tk::end) {
                if (!top) fail(t, "expected '}'");
                return;
            }
            if (!top && at_punct("}")) return;
            if (t.kind == tk::doc) {
                pending_doc_ = t;
                consume();
                continue;
            }
            if (at_punct(";")) {
                consume();
                continue;
            }
            if (at_ident("namespace")) {
                pending_doc_.reset();
                parse_namespace(pkg);
                continue;
            }
            if (at_ident("class") || at_ident("struct")) {
                parse_class(pkg);
                continue;
            }
            if (t.kind == tk::ident &&
                std::find(kUnsupported.begin(), kUnsupported.end(), t.text) !=
                    kUnsupported.end()) {
                fail(t, "'" + std::string(t.text) + "' is outside the supported header subset");
            }
            fail(t, "expected 'namespace', 'class' or 'struct'");
        }
    }

    element_id child_package(element_id parent, std::string_view name) {
        for (element_id child : model_.at(parent).children()) {
            const element& e = model_.at(child);
            if (e.shape() == shape_type::package && e.name() == name) return child;
        }
        element_id pkg = model_.add_package(parent, name);
        model_.put_property(pkg, prop::model_part, model_part_project);
        return pkg;
    }

    void parse_namespace(element_id parent) {
        consume();  // namespace
        element_id pkg = child_package(parent, expect_name("namespace name").text);
        while (accept_punct("::")) {
            pkg = child_package(pkg, expect_name("namespace name").text);
        }
        expect_punct("{");
        parse_scope(pkg, false);
        expect_punct("}");
    }

    void parse_class(element_id parent) {
        const token& kw = consume();  // class | struct
        bool is_struct = kw.text == "struct";
        const token& name_tok = expect_name("class name");
        std::string name(name_tok.text);

        if (accept_punct(";")) {  // forward declaration
            pending_doc_.reset();
            return;
        }

        std::string bases;
        if (accept_punct(":")) {
            while (true) {
                while (at_ident("public") || at_ident("protected") || at_ident("private") ||
                       at_ident("virtual"))
                    consume();
                if (!bases.empty()) bases += ',';
                bases += expect_name("base class name").text;
                while (accept_punct("::")) {
                    bases += "::";
                    bases += expect_name("base class name").text;
                }
                if (!accept_punct(",")) break;
            }
        }
        expect_punct("{");

        element_id cls = model_.add_class(parent, name);
        model_.put_property(cls, prop::model_part, model_part_project);
        if (!bases.empty()) model_.put_property(cls, prop::extends, bases);

        class_span span;
        span.name = name;
        span.begin = kw.offset;
        if (pending_doc_) {
            span.doc_begin = pending_doc_->offset;
            span.doc_end = pending_doc_->offset + pending_doc_->text.size();
            apply_annotations(cls, *pending_doc_);
            pending_doc_.reset();
        }

        std::string access = is_struct ? "public" : "private";
        member_stats stats;
        while (!at_punct("}")) {
            const token& t = peek();
            if (t.kind == tk::end) fail(t, "expected '}'");
            if (t.kind == tk::doc) {
                pending_doc_ = t;
                consume();
                continue;
            }
            if (at_punct(";")) {
                consume();
                continue;
            }
            if ((at_ident("public") || at_ident("protected") || at_ident("private")) &&
                at_punct(":", 1)) {
                access = std::string(consume().text);
                consume();  // ':'
                continue;
            }
            parse_member(cls, name, access, stats);
        }
        expect_punct("}");
        span.end = expect_punct(";").offset + 1;
        spans_.push_back(std::move(span));
        pending_doc_.reset();

        // Heuristic interface detection: at least one pure-virtual method,
        // nothing concrete, no data. An explicit @adl.interface tag wins
        // over this either way.
        if (stats.pure_virtual > 0 && stats.plain_methods == 0 && stats.attributes == 0) {
            model_.put_property(cls, prop::interface, "");
        }
    }

    void parse_member(element_id cls, const std::string& class_name, const std::string& access,
                      member_stats& stats) {
        std::optional<token> doc = std::exchange(pending_doc_, std::nullopt);

        const token& first = peek();
        if (first.kind == tk::ident &&
            std::find(kUnsupported.begin(), kUnsupported.end(), first.text) !=
                kUnsupported.end()) {
            fail(first, "'" + std::string(first.text) + "' is outside the supported header subset");
        }
        if (at_ident("class") || at_ident("struct"))
            fail(first, "nested classes are outside the supported header subset");

        bool is_virtual = false;
        while (peek().kind == tk::ident &&
               std::find(kSpecifiers.begin(), kSpecifiers.end(), peek().text) !=
                   kSpecifiers.end()) {
            is_virtual |= peek().text == "virtual";
            consume();
        }

        if (accept_punct("~")) {
            const token& n = expect_ident("destructor name");
            if (n.text != class_name)
                fail(n, "destructor name must match the class name");
            element_id op = model_.add_operation(cls, "~" + class_name, access);
            model_.put_property(op, prop::model_part, model_part_project);
            expect_punct("(");
            expect_punct(")");
            finish_method();
            if (doc) apply_annotations(op, *doc);
            return;
        }

        if (peek().kind == tk::ident && peek().text == class_name && at_punct("(", 1)) {
            consume();
            element_id op = model_.add_operation(cls, class_name, access);
            model_.put_property(op, prop::model_part, model_part_project);
            parse_parameter_list(op);
            finish_method();
            if (doc) apply_annotations(op, *doc);
            ++stats.plain_methods;
            return;
        }

        std::pair<std::size_t, std::size_t> type = parse_type_tokens();
        std::string_view type_text = slice(type);
        const token& name_tok = expect_name("member name");

        if (at_punct("(")) {
            element_id op = model_.add_operation(cls, name_tok.text, access);
            model_.put_property(op, prop::model_part, model_part_project);
            model_.put_property(op, prop::return_type, type_text);
            parse_parameter_list(op);
            bool pure = finish_method();
            if (pure && is_virtual) {
                ++stats.pure_virtual;
            } else {
                ++stats.plain_methods;
            }
            if (doc) apply_annotations(op, *doc);
            return;
        }

        // Data member(s). Multiple declarators share the type and the doc.
        auto add_field = [&](const token& nt) {
            if (at_punct("[")) fail(peek(), "array members are outside the supported subset");
            element_id attr = model_.add_attribute(cls, nt.text, type_text, access);
            model_.put_property(attr, prop::model_part, model_part_project);
            if (doc) apply_annotations(attr, *doc);
            ++stats.attributes;
            skip_initializer();
        };
        add_field(name_tok);
        while (accept_punct(",")) {
            add_field(expect_name("member name"));
        }
        expect_punct(";");
    }

    /// Token-level subset type expression; the spelling is the raw slice.
    std::pair<std::size_t, std::size_t> parse_type_tokens() {
        std::size_t begin = peek().offset;
        if (at_ident("const")) consume();
        const token& head = expect_ident("a type");
        std::size_t end = head.offset + head.text.size();

        if (is_primitive_word(head.text)) {
            while (peek().kind == tk::ident && is_primitive_word(peek().text)) {
                const token& t = consume();
                end = t.offset + t.text.size();
            }
        } else {
            while (at_punct("::")) {
                consume();
                const token& t = expect_ident("an identifier after '::'");
                end = t.offset + t.text.size();
            }
            if (at_punct("<")) {
                const token& open = consume();
                int depth = 1;
                while (depth > 0) {
                    const token& t = peek();
                    if (t.kind == tk::end) fail(open, "unbalanced '<'");
                    if (t.kind == tk::punct && (t.text == "*" || t.text == "&"))
                        fail(t, "pointer/reference types are not supported (ADL carries values)");
                    if (t.kind == tk::punct && t.text == "<") ++depth;
                    if (t.kind == tk::punct && t.text == ">") --depth;
                    if (t.kind != tk::ident && t.kind != tk::punct)
                        fail(t, "unexpected token in template argument");
                    if (t.kind == tk::punct && t.text != "<" && t.text != ">" &&
                        t.text != "," && t.text != "::")
                        fail(t, "unexpected token in template argument");
                    const token& c = consume();
                    end = c.offset + c.text.size();
                }
            }
        }
        if (at_punct("*") || at_punct("&"))
            fail(peek(), "pointer/reference types are not supported (ADL carries values)");
        return {begin, end};
    }

    std::string_view slice(std::pair<std::size_t, std::size_t> span) const {
        return text_.substr(span.first, span.second - span.first);
    }

    void parse_parameter_list(element_id op) {
        expect_punct("(");
        if (accept_punct(")")) return;
        if (at_ident("void") && at_punct(")", 1)) {  // C-style empty list
            consume();
            consume();
            return;
        }
        while (true) {
            std::pair<std::size_t, std::size_t> type = parse_type_tokens();
            const token& name = expect_name("parameter name");
            element_id param = model_.add_parameter(op, name.text, slice(type));
            model_.put_property(param, prop::model_part, model_part_project);
            if (accept_punct("=")) skip_default_argument();
            if (accept_punct(",")) continue;
            expect_punct(")");
            return;
        }
    }

    void skip_default_argument() {
        int depth = 0;
        while (true) {
            const token& t = peek();
            if (t.kind == tk::end) fail(t, "unterminated default argument");
            if (t.kind == tk::punct) {
                if (t.text == "(" || t.text == "{" || t.text == "[") ++depth;
                if (t.text == ")" || t.text == "}" || t.text == "]") {
                    if (depth == 0) return;  // closing ')' of the parameter list
                    --depth;
                }
                if (t.text == "," && depth == 0) return;
            }
            consume();
        }
    }

    void skip_initializer() {
        if (at_punct("{")) {
            skip_balanced("{", "}");
            return;
        }
        if (!accept_punct("=")) return;
        int depth = 0;
        while (true) {
            const token& t = peek();
            if (t.kind == tk::end) fail(t, "unterminated initializer");
            if (t.kind == tk::punct) {
                if (t.text == "(" || t.text == "{" || t.text == "[") ++depth;
                if (t.text == ")" || t.text == "}" || t.text == "]") --depth;
                if ((t.text == ";" || t.text == ",") && depth == 0) return;
            }
            consume();
        }
    }

    void skip_balanced(std::string_view open, std::string_view close) {
        const token& start = expect_punct(open);
        int depth = 1;
        while (depth > 0) {
            const token& t = peek();
            if (t.kind == tk::end)
                fail(start, "unbalanced '" + std::string(open) + "'");
            if (t.kind == tk::punct && t.text == open) ++depth;
            if (t.kind == tk::punct && t.text == close) --depth;
            consume();
        }
    }

    /// Trailing qualifiers and the declaration terminator. True for `= 0`.
    bool finish_method() {
        while (at_ident("const") || at_ident("noexcept") || at_ident("override") ||
               at_ident("final")) {
            bool was_noexcept = peek().text == "noexcept";
            consume();
            if (was_noexcept && at_punct("(")) skip_balanced("(", ")");
        }
        if (accept_punct("=")) {
            const token& v = consume();
            if (v.kind == tk::number && v.text == "0") {
                expect_punct(";");
                return true;
            }
            if (v.kind == tk::ident && (v.text == "default" || v.text == "delete")) {
                expect_punct(";");
                return false;
            }
            fail(v, "expected '0', 'default' or 'delete'");
        }
        if (at_punct(":")) {  // constructor initializer list
            consume();
            while (!at_punct("{")) {
                const token& t = peek();
                if (t.kind == tk::end) fail(t, "expected a constructor body");
                if (at_punct("(")) {
                    skip_balanced("(", ")");
                } else if (at_punct("{") == false) {
                    consume();
                }
            }
        }
        if (at_punct("{")) {
            skip_balanced("{", "}");
            accept_punct(";");
            return false;
        }
        expect_punct(";");
        return false;
    }

    void apply_annotations(element_id target, const token& doc) {
        doc_comment comment = parse_doc_comment(doc.text);
        std::vector<std::pair<std::string, std::string>> pairs;
        try {
            pairs = extract_annotations(comment);
        } catch (const annotation_error& e) {
            throw parse_error(e.what(), doc.line, doc.column);
        }
        for (const auto& [key, value] : pairs) {
            model_.put_property(target, key, value);
        }
    }

    model& model_;
    std::string_view text_;
    std::string_view path_;
    std::vector<token> tokens_;
    std::size_t pos_ = 0;
    std::optional<token> pending_doc_;
    std::vector<class_span> spans_;
};

}  // namespace

parsed_header parse_header(model& m, std::string_view text, std::string_view path) {
    return header_builder(m, text, path).run();
}

namespace {

struct raw_tag {
    std::string name;
    std::size_t begin = 0;  // the '@'
    std::size_t end = 0;    // one past the replaced region
};

bool tag_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

/// Tag occurrences inside one raw doc block. The replaced region covers the
/// tag name and, for value tags, the same-line argument text.
std::vector<raw_tag> scan_raw_tags(std::string_view text, std::size_t begin, std::size_t end) {
    std::vector<raw_tag> out;
    for (std::size_t i = begin; i < end; ++i) {
        if (text[i] != '@') continue;
        char prev = i > begin ? text[i - 1] : ' ';
        if (prev != ' ' && prev != '\t' && prev != '*' && prev != '\n' && prev != '\r') continue;
        std::size_t j = i + 1;
        if (j >= end || !std::isalpha(static_cast<unsigned char>(text[j]))) continue;
        while (j < end && tag_name_char(text[j])) ++j;
        while (j > i + 1 && text[j - 1] == '.') --j;

        raw_tag tag;
        tag.name = std::string(text.substr(i + 1, j - i - 1));
        tag.begin = i;

        // Same-line argument region: up to EOL, the closing */ or the next tag.
        std::size_t k = j;
        std::size_t arg_end = j;
        while (k < end && text[k] != '\n' && text[k] != '\r') {
            if (text[k] == '*' && k + 1 < end && text[k + 1] == '/') break;
            if (text[k] == '@' && k > j &&
                (text[k - 1] == ' ' || text[k - 1] == '\t') && k + 1 < end &&
                std::isalpha(static_cast<unsigned char>(text[k + 1])))
                break;
            if (text[k] != ' ' && text[k] != '\t') arg_end = k + 1;
            ++k;
        }
        tag.end = arg_end;
        out.push_back(std::move(tag));
        i = j - 1;
    }
    return out;
}

struct edit {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string replacement;
};

std::string apply_edits(std::string_view text, std::vector<edit> edits) {
    std::sort(edits.begin(), edits.end(),
              [](const edit& a, const edit& b) { return a.begin > b.begin; });
    std::string out(text);
    for (const edit& e : edits) {
        out.replace(e.begin, e.end - e.begin, e.replacement);
    }
    return out;
}

std::size_t line_start_of(std::string_view text, std::size_t pos) {
    std::size_t ls = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    return ls == std::string_view::npos ? 0 : ls + 1;
}

std::size_t line_end_of(std::string_view text, std::size_t pos) {
    std::size_t le = text.find('\n', pos);
    return le == std::string_view::npos ? text.size() : le + 1;
}

/// Removal edit for one tag: the whole line when nothing but comment
/// decoration would remain, otherwise the tag plus trailing blanks.
edit removal_edit(std::string_view text, const raw_tag& tag) {
    std::size_t erase_end = tag.end;
    while (erase_end < text.size() && (text[erase_end] == ' ' || text[erase_end] == '\t'))
        ++erase_end;

    std::size_t ls = line_start_of(text, tag.begin);
    std::size_t le = line_end_of(text, tag.begin);
    bool decoration_only = true;
    for (std::size_t i = ls; i < le; ++i) {
        if (i >= tag.begin && i < erase_end) continue;
        char c = text[i];
        if (c != ' ' && c != '\t' && c != '*' && c != '\r' && c != '\n') {
            decoration_only = false;
            break;
        }
    }
    if (decoration_only) return {ls, le, ""};
    return {tag.begin, erase_end, ""};
}

}  // namespace

std::string inject_annotation(std::string_view source_text, std::string_view class_name,
                              std::string_view key, std::optional<std::string_view> value) {
    const annotation_spec* spec = annotation_for_key(key);
    if (!spec) {
        throw annotation_error("no annotation tag is defined for property " +
                               std::string(key));
    }
    if (!spec->flag && value && value->empty()) {
        throw annotation_error("annotation tag '@" + std::string(spec->tag) +
                               "' requires a non-empty value");
    }

    model scratch;
    parsed_header parsed = parse_header(scratch, source_text, "<memory>");

    const class_span* target = nullptr;
    bool qualified = class_name.find("::") != std::string_view::npos;
    int matches = 0;
    std::size_t span_index = 0;

    // Classes in document order line up with the span order.
    std::vector<element_id> in_order;
    auto walk = [&](auto&& self, element_id id) -> void {
        const element& e = scratch.at(id);
        if (e.shape() == shape_type::class_) {
            in_order.push_back(id);
            return;
        }
        if (e.shape() != shape_type::package) return;
        for (element_id child : e.children()) self(self, child);
    };
    walk(walk, parsed.package);
    for (std::size_t i = 0; i < parsed.unit.classes.size(); ++i) {
        bool hit = qualified ? scratch.qualified_name(in_order[i]) == class_name
                             : parsed.unit.classes[i].name == class_name;
        if (hit) {
            ++matches;
            span_index = i;
        }
    }
    if (matches == 0) {
        throw lookup_error("class '" + std::string(class_name) + "' not found in source");
    }
    if (matches > 1) {
        throw lookup_error("class name '" + std::string(class_name) +
                           "' is ambiguous; use a qualified name");
    }
    target = &parsed.unit.classes[span_index];

    const std::string eol =
        source_text.find("\r\n") != std::string_view::npos ? "\r\n" : "\n";

    std::string rendered = "@" + std::string(spec->tag);
    if (!spec->flag && value) {
        rendered += ' ';
        rendered += *value;
    }

    if (!target->has_doc()) {
        if (!value) return std::string(source_text);  // nothing to remove
        std::size_t ls = line_start_of(source_text, target->begin);
        std::string_view indent = source_text.substr(ls, target->begin - ls);
        std::string block;
        block += std::string(indent) + "/**" + eol;
        block += std::string(indent) + " * " + rendered + eol;
        block += std::string(indent) + " */" + eol;
        return apply_edits(source_text, {{ls, ls, block}});
    }

    std::vector<raw_tag> tags =
        scan_raw_tags(source_text, target->doc_begin, target->doc_end);
    std::vector<const raw_tag*> hits;
    for (const raw_tag& tag : tags) {
        if (tag.name == spec->tag) hits.push_back(&tag);
    }

    std::vector<edit> edits;
    if (!value) {
        for (const raw_tag* tag : hits) edits.push_back(removal_edit(source_text, *tag));
    } else if (hits.empty()) {
        std::size_t close = target->doc_end - 2;  // the "*/"
        std::size_t doc_line_start = line_start_of(source_text, target->doc_begin);
        std::size_t close_line_start = line_start_of(source_text, close);
        if (close_line_start <= doc_line_start) {
            // Single-line block: insert inline before the closing delimiter.
            std::string insert = rendered + " ";
            if (close > 0 && source_text[close - 1] != ' ')
                insert = " " + insert;
            edits.push_back({close, close, insert});
        } else {
            std::size_t ws = close_line_start;
            while (ws < close && (source_text[ws] == ' ' || source_text[ws] == '\t')) ++ws;
            std::string indent(source_text.substr(close_line_start, ws - close_line_start));
            std::string line = indent + "* " + rendered + eol;
            edits.push_back({close_line_start, close_line_start, line});
        }
    } else {
        std::string_view current = std::string_view(source_text)
                                       .substr(hits[0]->begin, hits[0]->end - hits[0]->begin);
        if (current != rendered) {
            edits.push_back({hits[0]->begin, hits[0]->end, rendered});
        }
        for (std::size_t i = 1; i < hits.size(); ++i) {
            edits.push_back(removal_edit(source_text, *hits[i]));
        }
    }

    if (edits.empty()) return std::string(source_text);
    return apply_edits(source_text, std::move(edits));
}

}  // namespace adlgen
