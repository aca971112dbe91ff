#include "tcc/decompose.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "tcc/error.hpp"

namespace tcc {

std::string_view to_string(ComponentKind kind) {
    switch (kind) {
    case ComponentKind::TargetTree: return "TargetTree";
    case ComponentKind::IsolatedLoop: return "IsolatedLoop";
    case ComponentKind::LoopTree: return "LoopTree";
    case ComponentKind::Cactus: return "Cactus";
    case ComponentKind::General: return "General";
    }
    return "General";
}

std::vector<Vertex> LoopSubgraph::members() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < is_member.size(); ++v) {
        if (is_member[v]) out.push_back(v);
    }
    return out;
}

TargetCore target_core(const TransitionGraph& graph) {
    const std::size_t n = graph.size();
    const Adjacency rev = reverse(graph);
    TargetCore core;
    core.is_member.assign(n, false);
    core.layer.assign(n, std::nullopt);

    std::deque<Vertex> queue{graph.target()};
    core.is_member[graph.target()] = true;
    core.layer[graph.target()] = 0;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (const auto& a : rev.out[v]) {
            Vertex u = a.destination;
            if (core.is_member[u]) continue;
            core.is_member[u] = true;
            core.layer[u] = *core.layer[v] + 1;
            queue.push_back(u);
        }
    }

    for (Vertex v = 0; v < n; ++v) {
        if (!core.is_member[v]) continue;
        core.members.push_back(v);
        const Arc* chosen = nullptr;
        if (v != graph.target()) {
            // Successors are sorted, so the first shortest-path parent is the
            // lexicographically smallest.
            for (const auto& a : graph.out_arcs(v)) {
                if (core.layer[a.destination] && *core.layer[a.destination] + 1 == *core.layer[v]) {
                    chosen = &a;
                    break;
                }
            }
        }
        for (const auto& a : graph.out_arcs(v)) {
            if (&a == chosen) {
                core.real_arcs.push_back(a);
                continue;
            }
            std::optional<long> delta;
            if (core.layer[a.destination]) {
                delta = static_cast<long>(*core.layer[a.destination]) - static_cast<long>(*core.layer[v]);
            }
            core.virtual_arcs.push_back({a, delta});
        }
    }
    return core;
}

LoopSubgraph loop_subgraph(const TransitionGraph& graph, const TargetCore& core) {
    const std::size_t n = graph.size();
    const Adjacency rev = reverse(graph);
    LoopSubgraph loops;
    loops.is_member.assign(n, false);

    std::vector<std::optional<Vertex>> tree_of(n);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        if (core.is_member[v] || !graph.has_loop(v) || graph.out_degree(v) != 1) continue;
        bool fed = std::any_of(rev.out[v].begin(), rev.out[v].end(), [&](const Arc& a) { return !a.is_loop(); });
        loops.is_member[v] = true;
        if (!fed) {
            loops.isolated_loops.push_back(v);
        } else {
            loops.terminal_loops.push_back(v);
            tree_of[v] = v;
            loops.trees[v] = {v};
            queue.push_back(v);
        }
    }

    // A vertex joins once every regular successor is already in some tree;
    // a loop on it is ignored. It is attached to the tree of its smallest
    // regular successor.
    std::vector<std::size_t> pending(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (const auto& a : graph.out_arcs(v)) {
            if (!a.is_loop()) ++pending[v];
        }
    }
    while (!queue.empty()) {
        Vertex w = queue.front();
        queue.pop_front();
        for (const auto& a : rev.out[w]) {
            Vertex x = a.destination;
            if (a.is_loop() || core.is_member[x] || loops.is_member[x]) continue;
            if (--pending[x] != 0) continue;
            Vertex smallest = graph.out_arcs(x).front().destination;
            if (smallest == x) smallest = graph.out_arcs(x)[1].destination;
            Vertex root = *tree_of[smallest];
            tree_of[x] = root;
            loops.is_member[x] = true;
            loops.trees[root].push_back(x);
            queue.push_back(x);
        }
    }
    for (auto& [root, members] : loops.trees) std::sort(members.begin(), members.end());
    return loops;
}

ResidualDecomposition residual_decomposition(const TransitionGraph& graph, const TargetCore& core,
                                             const LoopSubgraph& loops) {
    const std::size_t n = graph.size();
    ResidualDecomposition res;
    std::vector<bool> keep(n, false);
    for (Vertex v = 0; v < n; ++v) {
        if (!core.is_member[v] && !loops.is_member[v]) {
            keep[v] = true;
            res.vertices.push_back(v);
        }
    }
    for (Vertex v : res.vertices) {
        if (graph.out_degree(v) == 0) continue;  // dead end, reported by validation
        bool onward = false;
        for (const auto& a : graph.out_arcs(v)) {
            if (!a.is_loop() && keep[a.destination]) onward = true;
        }
        if (!onward) {
            throw Error(ErrorKind::InternalInconsistency,
                        "residual vertex '" + graph.id(v) + "' has no regular arc into the residual");
        }
    }

    const SccPartition scc = strongly_connected_components(graph, keep);
    const Condensation cond = condensation(graph, scc);
    std::vector<ResidualPart> part_of(scc.count());
    for (std::size_t c = 0; c < scc.count(); ++c) {
        const auto& comp = scc.components[c];
        if (comp.size() >= 2) {
            part_of[c] = {ResidualPart::Kind::Cluster, res.clusters.size()};
            res.clusters.push_back(comp);
        } else {
            part_of[c] = {ResidualPart::Kind::Singleton, res.singletons.size()};
            res.singletons.push_back(comp.front());
        }
    }
    for (auto c : cond.order) res.order.push_back(part_of[c]);
    for (Vertex v : res.vertices) {
        for (const auto& a : graph.out_arcs(v)) {
            if (keep[a.destination] && scc.index[v] != scc.index[a.destination]) res.branch_arcs.push_back(a);
        }
    }
    return res;
}

std::vector<ComponentClass> classify_components(const TransitionGraph& graph) {
    if (graph.mode() != GraphMode::Deterministic) {
        throw Error(ErrorKind::ModeViolation, "component classification needs a deterministic graph, got " +
                                                  std::string(to_string(graph.mode())));
    }
    std::vector<ComponentClass> out;
    std::vector<std::size_t> seen_at(graph.size(), std::numeric_limits<std::size_t>::max());
    for (auto& comp : weak_components(graph)) {
        ComponentClass cls{ComponentKind::TargetTree, std::move(comp), {}, std::nullopt};
        if (std::binary_search(cls.vertices.begin(), cls.vertices.end(), graph.target())) {
            cls.root = graph.target();
            out.push_back(std::move(cls));
            continue;
        }
        // Follow the unique successor until a loop vertex or a revisit.
        std::vector<Vertex> path;
        Vertex v = cls.vertices.front();
        while (seen_at[v] == std::numeric_limits<std::size_t>::max()) {
            seen_at[v] = path.size();
            path.push_back(v);
            Vertex next = graph.out_arcs(v).front().destination;
            if (next == v) break;
            v = next;
        }
        if (graph.has_loop(v)) {
            cls.kind = cls.vertices.size() == 1 ? ComponentKind::IsolatedLoop : ComponentKind::LoopTree;
            cls.root = v;
        } else {
            cls.kind = ComponentKind::Cactus;
            std::vector<Vertex> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), path.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            cls.cycle = std::move(cycle);
        }
        out.push_back(std::move(cls));
    }
    return out;
}

InBranchingResult in_branching_check(const TransitionGraph& graph) {
    InBranchingResult result;
    const TargetCore core = target_core(graph);
    std::vector<Vertex> comp;
    for (auto& c : weak_components(graph)) {
        if (std::binary_search(c.begin(), c.end(), graph.target())) {
            comp = std::move(c);
            break;
        }
    }
    if (std::all_of(comp.begin(), comp.end(), [&](Vertex v) { return core.is_member[v]; })) {
        result.exists = true;
        result.branching = core.real_arcs;
        return result;
    }
    std::vector<bool> keep(graph.size(), false);
    for (Vertex v : comp) keep[v] = true;
    const SccPartition scc = strongly_connected_components(graph, keep);
    const Condensation cond = condensation(graph, scc);
    for (std::size_t c = 0; c < scc.count(); ++c) {
        if (cond.successors[c].empty() && c != scc.index[graph.target()]) {
            result.offending_component = scc.components[c];
            break;
        }
    }
    return result;
}

Decomposition decompose(const TransitionGraph& graph) {
    Decomposition d;
    d.vertex_ids = graph.vertex_ids();
    d.scc = strongly_connected_components(graph);
    d.condensation = condensation(graph, d.scc);
    d.core = target_core(graph);
    d.loops = loop_subgraph(graph, d.core);
    d.residual = residual_decomposition(graph, d.core, d.loops);

    if (graph.mode() == GraphMode::Deterministic) {
        d.components = classify_components(graph);
        return d;
    }
    d.components.push_back({ComponentKind::TargetTree, d.core.members, {}, graph.target()});
    for (Vertex v : d.loops.isolated_loops) d.components.push_back({ComponentKind::IsolatedLoop, {v}, {}, v});
    for (const auto& [root, members] : d.loops.trees) {
        d.components.push_back({ComponentKind::LoopTree, members, {}, root});
    }
    // Residual vertices grouped by weak connectivity inside the residual.
    std::vector<bool> in_residual(graph.size(), false);
    for (Vertex v : d.residual.vertices) in_residual[v] = true;
    std::vector<bool> placed(graph.size(), false);
    const Adjacency rev = reverse(graph);
    for (Vertex start : d.residual.vertices) {
        if (placed[start]) continue;
        ComponentClass cls{ComponentKind::General, {}, {}, std::nullopt};
        std::vector<Vertex> stack{start};
        placed[start] = true;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            cls.vertices.push_back(v);
            auto visit = [&](Vertex w) {
                if (in_residual[w] && !placed[w]) {
                    placed[w] = true;
                    stack.push_back(w);
                }
            };
            for (const auto& a : graph.out_arcs(v)) visit(a.destination);
            for (const auto& a : rev.out[v]) visit(a.destination);
        }
        std::sort(cls.vertices.begin(), cls.vertices.end());
        d.components.push_back(std::move(cls));
    }
    std::sort(d.components.begin(), d.components.end(),
              [](const auto& a, const auto& b) { return a.vertices.front() < b.vertices.front(); });
    return d;
}

}  // namespace tcc
