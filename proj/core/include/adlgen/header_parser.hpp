#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adlgen/model.hpp"

namespace adlgen {

struct class_span {
    std::string name;
    /// Byte offset of the `class`/`struct` keyword.
    std::size_t begin = 0;
    /// One past the terminating `;`.
    std::size_t end = 0;
    /// The attached `/** ... */` block; equal offsets when absent.
    std::size_t doc_begin = 0;
    std::size_t doc_end = 0;

    bool has_doc() const { return doc_end > doc_begin; }
};

/// One parsed header: raw text plus non-overlapping, ordered class spans.
/// Slicing a span out of `text` reproduces the declaration verbatim.
struct source_unit {
    std::string path;
    std::string text;
    std::vector<class_span> classes;
};

struct parsed_header {
    /// The per-path wrapper package (carries FILE=<path>).
    element_id package;
    source_unit unit;
};

/// Parses a restricted C++ header subset into model elements: one CLASS per
/// class with ATTRIBUTE/OPERATION members in declaration order, @adl.* doc
/// tags applied as properties, MODEL_PART="Model" everywhere. Pure function
/// of (text, path); any number of files may be parsed concurrently into
/// separate models.
parsed_header parse_header(model& m, std::string_view text, std::string_view path);

/// Adds, updates or removes one @adl.* tag on the doc comment of
/// `class_name` (simple or qualified), creating a `/** */` block above the
/// class when none exists. An absent value removes the tag. Byte-level
/// idempotent; all other bytes and the file's line endings are preserved.
std::string inject_annotation(std::string_view source_text, std::string_view class_name,
                              std::string_view key, std::optional<std::string_view> value);

}  // namespace adlgen
