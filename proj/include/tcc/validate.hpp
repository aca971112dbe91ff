#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tcc/graph.hpp"

namespace tcc {

/// Three readings of "the object ends up in the target class":
/// possible (some path reaches it), almost_sure (every reachable vertex can
/// still reach it) and sure (every path reaches it, whatever arc is taken).
struct ReachabilitySets {
    std::vector<Vertex> possible;
    std::vector<Vertex> almost_sure;
    std::vector<Vertex> sure;
};

enum class DefectKind { UnreachableComponent, OrientedCycleTrap, LoopTrap, DeadEnd, BottomUpArc };

std::string_view to_string(DefectKind kind);

struct Defect {
    DefectKind kind;
    std::vector<Vertex> vertices;
    std::string note;
};

struct Coverage {
    std::size_t covered = 0;
    std::size_t total = 0;

    double value() const noexcept { return total == 0 ? 0.0 : static_cast<double>(covered) / total; }
};

struct ValidationReport {
    Coverage coverage;
    ReachabilitySets sets;
    std::vector<Defect> defects;  // ordered by kind, then vertex list
};

ReachabilitySets reachability_sets(const TransitionGraph& graph);
ValidationReport validate(const TransitionGraph& graph);

}  // namespace tcc
