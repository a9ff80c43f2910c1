#pragma once

// Internal: sectioned key-value text, read through Boost.PropertyTree.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aigx::detail {

struct IniSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries; // file order
};

struct IniDocument {
    std::vector<std::pair<std::string, std::string>> globals; // keys before any section
    std::vector<IniSection> sections;                         // file order
};

/// Throws std::runtime_error with a line number on malformed text, duplicate
/// sections or duplicate keys.
IniDocument parse_ini(std::string_view text);

std::string read_text_file(const std::string& path);

} // namespace aigx::detail
