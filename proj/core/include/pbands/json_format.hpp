#pragma once

#include <string>

#include <json.hpp>

namespace pbands {

// Serializes with sorted object keys, two-space indent and every floating
// point number printed with 17 significant digits, so equal documents are
// byte-identical. Non-finite doubles become null.
std::string canonical_json(const nlohmann::json& doc);

// Same number formatting as canonical_json, for CSV cells.
std::string format_double(double x);

}  // namespace pbands
