#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlgen/adl_unit.hpp"

namespace adlgen {

struct diagnostic {
    enum class severity { error, warning };

    severity sev = severity::error;
    std::size_t line = 1;
    std::string message;

    friend bool operator==(const diagnostic&, const diagnostic&) = default;
};

std::string_view to_string(diagnostic::severity sev);

/// Source line positions recorded while parsing, for diagnostics.
struct adl_layout {
    std::size_t guard_line = 1;
    std::size_t kind_line = 1;
    std::vector<std::size_t> include_lines;
    std::vector<std::size_t> attribute_lines;
    std::vector<std::size_t> operation_lines;
};

/// Parses the generator's dialect plus arbitrary blank-line runs. A missing
/// header comment leaves the fields empty. Any non-conforming input maps to
/// a parse_error with a line number.
adl_unit parse_adl(std::string_view text);
adl_unit parse_adl(std::string_view text, adl_layout& layout);

/// Well-formedness checks: guard/class mismatch and duplicate member names
/// are errors; an include missing from the sibling set and a kind outside
/// the allowed set are warnings.
std::vector<diagnostic> check_unit(const adl_unit& unit,
                                   const std::set<std::string>& sibling_files,
                                   const adl_layout* layout = nullptr);
std::vector<diagnostic> check_unit(const adl_unit& unit,
                                   const std::set<std::string>& sibling_files,
                                   std::span<const std::string> allowed_kinds,
                                   const adl_layout* layout = nullptr);

/// `<file>:<line>: <severity>: <message>`
std::string format_diagnostic(std::string_view file, const diagnostic& d);

}  // namespace adlgen
