#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tcc/graph.hpp"

namespace tcc {

/// Strong components, each sorted ascending, listed by smallest member.
struct SccPartition {
    std::vector<std::vector<Vertex>> components;
    std::vector<std::size_t> index;  // vertex -> component ordinal

    std::size_t count() const noexcept { return components.size(); }
};

/// Strong component digraph. Parallel arcs are merged and self-arcs dropped.
struct Condensation {
    std::vector<std::vector<std::size_t>> successors;  // sorted, unique
    std::vector<std::size_t> order;                    // acyclic ordering of the ordinals

    std::size_t size() const noexcept { return successors.size(); }
};

struct VirtualArc {
    Arc arc;
    /// layer(destination) - layer(source); empty when the arc leaves the core.
    std::optional<long> layer_delta;
};

/// Vertices with a directed path to the target, layered by shortest distance.
/// Real arcs form an in-branching rooted at the target; every other arc out
/// of a member is virtual.
struct TargetCore {
    std::vector<Vertex> members;
    std::vector<bool> is_member;
    std::vector<std::optional<std::size_t>> layer;
    std::vector<Arc> real_arcs;
    std::vector<VirtualArc> virtual_arcs;
};

/// Loop vertices outside the core from which no regular arc departs, plus the
/// in-trees draining into them.
struct LoopSubgraph {
    std::vector<Vertex> isolated_loops;
    std::vector<Vertex> terminal_loops;
    std::map<Vertex, std::vector<Vertex>> trees;  // root -> members, root included
    std::vector<bool> is_member;                  // isolated loops and tree members

    std::vector<Vertex> members() const;
};

struct ResidualPart {
    enum class Kind { Singleton, Cluster };
    Kind kind;
    std::size_t index;  // into singletons or clusters

    friend bool operator==(const ResidualPart&, const ResidualPart&) = default;
};

/// Whatever remains after removing the core and the loop subgraph.
struct ResidualDecomposition {
    std::vector<Vertex> vertices;
    std::vector<std::vector<Vertex>> clusters;  // nondegenerate strong components
    std::vector<Vertex> singletons;
    std::vector<ResidualPart> order;            // acyclic ordering of all parts
    std::vector<Arc> branch_arcs;               // residual arcs between distinct parts
};

enum class ComponentKind { TargetTree, IsolatedLoop, LoopTree, Cactus, General };

std::string_view to_string(ComponentKind kind);

struct ComponentClass {
    ComponentKind kind;
    std::vector<Vertex> vertices;
    std::vector<Vertex> cycle;   // Cactus only, starting at its smallest vertex
    std::optional<Vertex> root;  // TargetTree, IsolatedLoop and LoopTree
};

/// Everything the analyses derive from one graph, bundled for rendering.
struct Decomposition {
    std::vector<VertexId> vertex_ids;
    SccPartition scc;
    Condensation condensation;
    TargetCore core;
    LoopSubgraph loops;
    ResidualDecomposition residual;
    std::vector<ComponentClass> components;
};

struct InBranchingResult {
    bool exists = false;
    std::vector<Arc> branching;                  // when exists
    std::vector<Vertex> offending_component;     // a second terminal strong component otherwise
};

SccPartition strongly_connected_components(const TransitionGraph& graph);

/// SCCs of the subgraph induced by `keep` (vertices outside it are ignored).
/// Components are indexed only for kept vertices; other entries of `index`
/// are set to SIZE_MAX.
SccPartition strongly_connected_components(const TransitionGraph& graph, const std::vector<bool>& keep);

Condensation condensation(const TransitionGraph& graph, const SccPartition& scc);

/// Weakly connected components, each sorted, listed by smallest member.
std::vector<std::vector<Vertex>> weak_components(const TransitionGraph& graph);

TargetCore target_core(const TransitionGraph& graph);
LoopSubgraph loop_subgraph(const TransitionGraph& graph, const TargetCore& core);
ResidualDecomposition residual_decomposition(const TransitionGraph& graph, const TargetCore& core,
                                             const LoopSubgraph& loops);

/// Requires a Deterministic graph; throws ModeViolation otherwise.
std::vector<ComponentClass> classify_components(const TransitionGraph& graph);

InBranchingResult in_branching_check(const TransitionGraph& graph);

/// Runs the whole pipeline. Components come from classify_components() for
/// Deterministic graphs and from the core/loop/residual regions otherwise.
Decomposition decompose(const TransitionGraph& graph);

}  // namespace tcc
