#include "tcc/validate.hpp"

#include <algorithm>
#include <deque>

#include "tcc/decompose.hpp"

namespace tcc {

std::string_view to_string(DefectKind kind) {
    switch (kind) {
    case DefectKind::UnreachableComponent: return "UnreachableComponent";
    case DefectKind::OrientedCycleTrap: return "OrientedCycleTrap";
    case DefectKind::LoopTrap: return "LoopTrap";
    case DefectKind::DeadEnd: return "DeadEnd";
    case DefectKind::BottomUpArc: return "BottomUpArc";
    }
    return "Defect";
}

namespace {

std::vector<Vertex> to_list(const std::vector<bool>& mask) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < mask.size(); ++v) {
        if (mask[v]) out.push_back(v);
    }
    return out;
}

// Everything that can reach a vertex of `seeds`, seeds included.
std::vector<bool> backward_closure(const Adjacency& rev, std::vector<bool> seeds) {
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < seeds.size(); ++v) {
        if (seeds[v]) queue.push_back(v);
    }
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (const auto& a : rev.out[v]) {
            if (!seeds[a.destination]) {
                seeds[a.destination] = true;
                queue.push_back(a.destination);
            }
        }
    }
    return seeds;
}

}  // namespace

ReachabilitySets reachability_sets(const TransitionGraph& graph) {
    const std::size_t n = graph.size();
    const Adjacency rev = reverse(graph);

    std::vector<bool> target_only(n, false);
    target_only[graph.target()] = true;
    const std::vector<bool> possible = backward_closure(rev, target_only);

    std::vector<bool> bad(n);
    for (Vertex v = 0; v < n; ++v) bad[v] = !possible[v];
    const std::vector<bool> tainted = backward_closure(rev, bad);
    std::vector<bool> almost(n);
    for (Vertex v = 0; v < n; ++v) almost[v] = !tainted[v];

    // Least fixpoint: a vertex is sure once all of its successors are.
    std::vector<bool> sure(n, false);
    std::vector<std::size_t> pending(n);
    for (Vertex v = 0; v < n; ++v) pending[v] = graph.out_degree(v);
    std::deque<Vertex> queue{graph.target()};
    sure[graph.target()] = true;
    while (!queue.empty()) {
        Vertex w = queue.front();
        queue.pop_front();
        for (const auto& a : rev.out[w]) {
            Vertex u = a.destination;
            if (sure[u] || --pending[u] != 0) continue;
            sure[u] = true;
            queue.push_back(u);
        }
    }
    return {to_list(possible), to_list(almost), to_list(sure)};
}

ValidationReport validate(const TransitionGraph& graph) {
    ValidationReport report;
    report.sets = reachability_sets(graph);
    report.coverage = {report.sets.possible.size(), graph.size()};

    const TargetCore core = target_core(graph);
    const LoopSubgraph loops = loop_subgraph(graph, core);
    const ResidualDecomposition residual = residual_decomposition(graph, core, loops);

    auto& defects = report.defects;
    for (auto& comp : weak_components(graph)) {
        if (std::none_of(comp.begin(), comp.end(), [&](Vertex v) { return core.is_member[v]; })) {
            defects.push_back({DefectKind::UnreachableComponent, std::move(comp),
                               "no vertex of this component can reach the target"});
        }
    }
    for (const auto& cluster : residual.clusters) {
        defects.push_back({DefectKind::OrientedCycleTrap, cluster, "oriented cycles with no exit to the target"});
    }
    std::vector<Vertex> loop_roots = loops.isolated_loops;
    loop_roots.insert(loop_roots.end(), loops.terminal_loops.begin(), loops.terminal_loops.end());
    std::sort(loop_roots.begin(), loop_roots.end());
    for (Vertex v : loop_roots) {
        defects.push_back({DefectKind::LoopTrap, {v}, "loop vertex with no regular outgoing arc"});
    }
    for (Vertex v = 0; v < graph.size(); ++v) {
        if (v != graph.target() && graph.out_degree(v) == 0) {
            defects.push_back({DefectKind::DeadEnd, {v}, "non-target vertex with no outgoing arc"});
        }
    }
    for (const auto& va : core.virtual_arcs) {
        if (va.layer_delta && *va.layer_delta >= 0) {
            std::vector<Vertex> ends{va.arc.source};
            if (!va.arc.is_loop()) ends.push_back(va.arc.destination);
            defects.push_back({DefectKind::BottomUpArc, std::move(ends),
                               "arc does not descend a layer (delta " + std::to_string(*va.layer_delta) + ")"});
        }
    }
    std::stable_sort(defects.begin(), defects.end(), [](const Defect& a, const Defect& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.vertices < b.vertices;
    });
    return report;
}

}  // namespace tcc
