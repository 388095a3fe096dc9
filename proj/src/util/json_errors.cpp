#include "twahss/util/json_errors.hpp"

#include "twahss/errors.hpp"

namespace twahss {

nlohmann::json parse_json_or_throw(const std::string& text, const std::string& what)
{
    bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
    if (blank)
        throw ParseError(what + ": empty input (line 1, column 1)");
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        std::size_t upto = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what + ": JSON syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col));
    }
}

}  // namespace twahss
