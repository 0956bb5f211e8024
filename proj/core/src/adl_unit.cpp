#include "adlgen/adl_unit.hpp"

namespace adlgen {

std::string attribute_decl::render() const {
    std::string out;
    if (persistent) out += "persistent ";
    if (readonly) out += "readonly ";
    out += visibility;
    out += " attribute ";
    out += type;
    out += ' ';
    out += name;
    out += ';';
    return out;
}

std::string operation_decl::render() const {
    std::string out = visibility;
    out += ' ';
    out += return_type;
    out += ' ';
    out += name;
    out += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += "in ";
        out += params[i].type;
        out += ' ';
        out += params[i].name;
    }
    out += ");";
    return out;
}

}  // namespace adlgen
