#ifndef ORLICZ_JSONIO_HPP
#define ORLICZ_JSONIO_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

namespace orlicz {

/// Serializes with a fixed layout and floats printed at 17 significant
/// digits, so equal values always produce equal bytes.
std::string dump_json_17(const nlohmann::ordered_json& j, int indent = 2);

/// Formats one double the same way dump_json_17 does.
std::string format_double_17(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string fnv1a64_hex(const std::string& s);

}  // namespace orlicz

#endif
