#include "adlgen/doc_comment.hpp"

#include <array>
#include <cctype>

#include "adlgen/errors.hpp"

namespace adlgen {

namespace {

constexpr std::array<annotation_spec, 5> kAnnotations = {{
    {"ADLENABLED", "adl.enabled", false},
    {"ADLINTERFACE", "adl.interface", false},
    {"ADLFOLDER", "adl.folder", false},
    {"ADLPERSISTENT", "adl.persistent", true},
    {"ADLREADONLY", "adl.readonly", true},
}};

bool tag_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

/// Comment text with the delimiters and per-line ` * ` decoration removed.
std::string strip_decoration(std::string_view raw) {
    std::string_view body = raw;
    if (body.starts_with("/**")) body.remove_prefix(3);
    if (body.ends_with("*/")) body.remove_suffix(2);

    std::string out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t eol = body.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? body.substr(pos) : body.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t ws = 0;
        while (ws < line.size() && (line[ws] == ' ' || line[ws] == '\t')) ++ws;
        if (ws < line.size() && line[ws] == '*') {
            ++ws;
            if (ws < line.size() && line[ws] == ' ') ++ws;
        }
        if (!out.empty()) out += '\n';
        out += line.substr(ws);

        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    bool in_ws = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = !out.empty();
            continue;
        }
        if (in_ws) out += ' ';
        in_ws = false;
        out += c;
    }
    return out;
}

}  // namespace

std::span<const annotation_spec> annotation_specs() { return kAnnotations; }

const annotation_spec* annotation_for_key(std::string_view key) {
    for (const annotation_spec& spec : kAnnotations)
        if (spec.key == key) return &spec;
    return nullptr;
}

const annotation_spec* annotation_for_tag(std::string_view tag) {
    for (const annotation_spec& spec : kAnnotations)
        if (spec.tag == tag) return &spec;
    return nullptr;
}

doc_comment parse_doc_comment(std::string_view raw) {
    doc_comment doc;
    doc.raw = std::string(raw);

    std::string text = strip_decoration(raw);

    // A tag starts at '@' preceded by start-of-text or whitespace and
    // followed by a letter; "name@host" stays prose.
    std::vector<std::pair<std::size_t, std::size_t>> tag_spans;  // (at, name_end)
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '@') continue;
        if (i > 0 && !std::isspace(static_cast<unsigned char>(text[i - 1]))) continue;
        std::size_t j = i + 1;
        if (j >= text.size() || !std::isalpha(static_cast<unsigned char>(text[j]))) continue;
        while (j < text.size() && tag_name_char(text[j])) ++j;
        while (j > i + 1 && text[j - 1] == '.') --j;  // trailing dots are prose
        tag_spans.emplace_back(i, j);
        i = j - 1;
    }

    for (std::size_t k = 0; k < tag_spans.size(); ++k) {
        auto [at, name_end] = tag_spans[k];
        std::size_t arg_end = k + 1 < tag_spans.size() ? tag_spans[k + 1].first : text.size();
        doc_tag tag;
        tag.name = text.substr(at + 1, name_end - at - 1);
        std::string arg = collapse_ws(text.substr(name_end, arg_end - name_end));
        if (!arg.empty()) tag.argument = std::move(arg);
        doc.tags.push_back(std::move(tag));
    }
    return doc;
}

std::vector<std::pair<std::string, std::string>> extract_annotations(const doc_comment& doc) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const doc_tag& tag : doc.tags) {
        if (!tag.name.starts_with("adl.")) continue;
        const annotation_spec* spec = annotation_for_tag(tag.name);
        if (!spec) {
            throw annotation_error("unknown annotation tag '@" + tag.name + "'");
        }
        if (spec->flag) {
            out.emplace_back(std::string(spec->key), std::string());
            continue;
        }
        if (!tag.argument) {
            throw annotation_error("annotation tag '@" + tag.name + "' requires a value");
        }
        std::string value = *tag.argument;
        if (std::size_t space = value.find(' '); space != std::string::npos) {
            value.resize(space);  // first token; the rest is prose
        }
        out.emplace_back(std::string(spec->key), std::move(value));
    }
    return out;
}

}  // namespace adlgen
