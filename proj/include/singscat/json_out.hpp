#pragma once

#include <json.hpp>

#include <string>

namespace singscat {

/// Compact JSON with keys in sorted order and floats at 17 significant digits.
/// Non-finite floats become null. Output is a fixed point of parse + dump.
std::string canonical_dump(const nlohmann::json& doc);

/// %.17g, with "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

}  // namespace singscat
