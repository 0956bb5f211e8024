#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adlgen {

struct doc_tag {
    /// Without the leading '@'.
    std::string name;
    /// Text between the tag name and the next tag, trimmed; absent if empty.
    std::optional<std::string> argument;
    friend bool operator==(const doc_tag&, const doc_tag&) = default;
};

/// One `/** ... */` block.
struct doc_comment {
    std::string raw;
    std::vector<doc_tag> tags;
    friend bool operator==(const doc_comment&, const doc_comment&) = default;
};

doc_comment parse_doc_comment(std::string_view raw);

/// One @adl.* tag understood by the frontend.
struct annotation_spec {
    std::string_view key;   // property key, e.g. "ADLINTERFACE"
    std::string_view tag;   // tag name, e.g. "adl.interface"
    bool flag;              // flags take no value and store empty text
};

std::span<const annotation_spec> annotation_specs();
const annotation_spec* annotation_for_key(std::string_view key);
const annotation_spec* annotation_for_tag(std::string_view tag);

/// (PropertyKey, value) pairs carried by the comment's @adl.* tags, in
/// order of appearance. Unknown @adl.* tags are rejected; other tags are
/// plain javadoc and ignored.
std::vector<std::pair<std::string, std::string>> extract_annotations(const doc_comment& doc);

}  // namespace adlgen
