#pragma once

#include <json.hpp>

#include <string>

namespace twahss {

// Parses JSON, turning syntax errors into ParseError with line and column.
nlohmann::json parse_json_or_throw(const std::string& text, const std::string& what);

}  // namespace twahss
