#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "tcc/graph.hpp"

namespace tcc::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TCC_FIXTURE_DIR) + "/" + name; }

inline std::string fixture_text(const std::string& name) {
    std::ifstream in(fixture_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loads one of the reference graphs G1..G8.
inline TransitionGraph fixture(const std::string& name) { return parse_text(fixture_text(name + ".tg")); }

inline Vertex vid(const TransitionGraph& g, const std::string& id) { return g.find(id).value(); }

inline std::vector<Vertex> vids(const TransitionGraph& g, std::initializer_list<const char*> ids) {
    std::vector<Vertex> out;
    for (const char* id : ids) out.push_back(vid(g, id));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tcc::testing
