#pragma once

#include <string>

#include "tcc/decompose.hpp"
#include "tcc/graph.hpp"

namespace tcc {

/// Graphviz rendering. With an annotation, nodes are filled by component
/// class, real arcs are solid and virtual arcs dashed; the target is always
/// double-circled. Throws AnnotationMismatch if the annotation names vertices
/// the graph does not have.
std::string to_dot(const TransitionGraph& graph, const Decomposition* annotation = nullptr);

std::string_view component_color(ComponentKind kind);

}  // namespace tcc
