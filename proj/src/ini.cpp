#include "ini.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace aigx::detail {

IniDocument parse_ini(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::runtime_error("line " + std::to_string(e.line()) + ": " + e.message());
    }

    IniDocument doc;
    for (const auto& [key, node] : tree) {
        if (node.empty()) {
            doc.globals.emplace_back(key, node.data());
            continue;
        }
        IniSection section{key, {}};
        for (const auto& [k, v] : node) section.entries.emplace_back(k, v.data());
        doc.sections.push_back(std::move(section));
    }
    return doc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace aigx::detail
