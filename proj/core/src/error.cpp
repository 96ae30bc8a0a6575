#include "actnet/error.hpp"

namespace actnet {

ValidationError::ValidationError(std::string key, const std::string& message)
    : Error(message), key_(std::move(key)) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace actnet
