#include "aigx/errors.hpp"

namespace aigx {

ParseError::ParseError(std::string element, std::size_t offset)
    : std::runtime_error("parse error: expected " + element + " at byte " + std::to_string(offset)),
      element_(std::move(element)), offset_(offset) {}

} // namespace aigx
