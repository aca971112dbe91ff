#include "tcc/dot.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "tcc/error.hpp"

namespace tcc {

std::string_view component_color(ComponentKind kind) {
    switch (kind) {
    case ComponentKind::TargetTree: return "palegreen";
    case ComponentKind::IsolatedLoop: return "lightgray";
    case ComponentKind::LoopTree: return "gold";
    case ComponentKind::Cactus: return "salmon";
    case ComponentKind::General: return "plum";
    }
    return "white";
}

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::pair<Vertex, Vertex> key(const Arc& a) { return {a.source, a.destination}; }

}  // namespace

std::string to_dot(const TransitionGraph& graph, const Decomposition* annotation) {
    std::vector<std::string_view> fill(graph.size());
    std::set<std::pair<Vertex, Vertex>> real, virt;
    if (annotation) {
        const auto& ids = annotation->vertex_ids;
        for (const auto& id : ids) {
            if (!graph.find(id)) throw Error(ErrorKind::AnnotationMismatch, "annotation vertex '" + id + "' unknown");
        }
        if (ids != graph.vertex_ids()) {
            throw Error(ErrorKind::AnnotationMismatch, "annotation was computed for a different vertex set");
        }
        for (const auto& cls : annotation->components) {
            for (Vertex v : cls.vertices) {
                if (v >= graph.size()) throw Error(ErrorKind::AnnotationMismatch, "component vertex out of range");
                fill[v] = component_color(cls.kind);
            }
        }
        for (const auto& a : annotation->core.real_arcs) real.insert(key(a));
        for (const auto& va : annotation->core.virtual_arcs) virt.insert(key(va.arc));
    }

    std::string out = "digraph " + quote(graph.name().value_or("tcc")) + " {\n";
    for (Vertex v = 0; v < graph.size(); ++v) {
        out += "  " + quote(graph.id(v)) + " [shape=";
        out += v == graph.target() ? "doublecircle" : "circle";
        if (!fill[v].empty()) {
            out += ", style=filled, fillcolor=";
            out += fill[v];
        }
        out += "];\n";
    }
    for (const auto& a : graph.arcs()) {
        out += "  " + quote(graph.id(a.source)) + " -> " + quote(graph.id(a.destination));
        std::vector<std::string> attrs;
        if (a.weight) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "label=\"%.6g\"", *a.weight);
            attrs.emplace_back(buf);
        }
        if (a.action) attrs.push_back("xlabel=" + quote(*a.action));
        if (real.count(key(a))) attrs.emplace_back("style=solid");
        if (virt.count(key(a))) attrs.emplace_back("style=dashed");
        if (!attrs.empty()) {
            out += " [";
            for (std::size_t i = 0; i < attrs.size(); ++i) out += (i ? ", " : "") + attrs[i];
            out += "]";
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace tcc
