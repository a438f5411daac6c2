#include "dynsearch/error.hpp"

namespace dynsearch {

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) {
        return message;
    }
    std::string out = "line " + std::to_string(line);
    if (column != 0) {
        out += ", column " + std::to_string(column);
    }
    return out + ": " + message;
}

std::string joined(const std::vector<std::string>& violations) {
    std::string out = "invalid transition system";
    for (const auto& v : violations) {
        out += "\n  - " + v;
    }
    return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(located(message, line, column)), detail_(message), line_(line), column_(column) {}

InvalidSystem::InvalidSystem(std::vector<std::string> violations)
    : Error(joined(violations)), violations_(std::move(violations)) {}

}  // namespace dynsearch
