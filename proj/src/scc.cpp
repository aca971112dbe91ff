#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "tcc/decompose.hpp"

namespace tcc {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

}  // namespace

// Iterative Tarjan; recursion depth would otherwise track the longest path.
SccPartition strongly_connected_components(const TransitionGraph& graph, const std::vector<bool>& keep) {
    const std::size_t n = graph.size();
    std::vector<std::size_t> number(n, kUnset), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::vector<std::pair<Vertex, std::size_t>> call;  // vertex, next arc position
    std::vector<std::vector<Vertex>> comps;
    std::size_t counter = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (!keep[root] || number[root] != kUnset) continue;
        call.emplace_back(root, 0);
        number[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& [v, pos] = call.back();
            auto row = graph.out_arcs(v);
            if (pos < row.size()) {
                Vertex w = row[pos++].destination;
                if (!keep[w]) continue;
                if (number[w] == kUnset) {
                    number[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], number[w]);
                }
                continue;
            }
            const Vertex done = v;
            call.pop_back();
            if (!call.empty()) {
                Vertex parent = call.back().first;
                lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
            }
            if (lowlink[done] == number[done]) {
                std::vector<Vertex> comp;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }

    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    SccPartition p;
    p.index.assign(n, kUnset);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (Vertex v : comps[c]) p.index[v] = c;
    }
    p.components = std::move(comps);
    return p;
}

SccPartition strongly_connected_components(const TransitionGraph& graph) {
    return strongly_connected_components(graph, std::vector<bool>(graph.size(), true));
}

Condensation condensation(const TransitionGraph& graph, const SccPartition& scc) {
    Condensation c;
    c.successors.resize(scc.count());
    for (const auto& a : graph.arcs()) {
        std::size_t from = scc.index[a.source], to = scc.index[a.destination];
        if (from == kUnset || to == kUnset || from == to) continue;
        c.successors[from].push_back(to);
    }
    std::vector<std::size_t> indegree(scc.count(), 0);
    for (auto& succ : c.successors) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        for (auto s : succ) ++indegree[s];
    }

    // Ordinals already follow the smallest member, so a min-heap gives the
    // lexicographic tie-break.
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < scc.count(); ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    c.order.reserve(scc.count());
    while (!ready.empty()) {
        auto i = ready.top();
        ready.pop();
        c.order.push_back(i);
        for (auto s : c.successors[i]) {
            if (--indegree[s] == 0) ready.push(s);
        }
    }
    return c;
}

std::vector<std::vector<Vertex>> weak_components(const TransitionGraph& graph) {
    const std::size_t n = graph.size();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto root = [&](Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& a : graph.arcs()) {
        Vertex x = root(a.source), y = root(a.destination);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
    std::vector<std::vector<Vertex>> comps;
    std::vector<std::size_t> slot(n, kUnset);
    for (Vertex v = 0; v < n; ++v) {
        Vertex r = root(v);
        if (slot[r] == kUnset) {
            slot[r] = comps.size();
            comps.emplace_back();
        }
        comps[slot[r]].push_back(v);
    }
    return comps;
}

}  // namespace tcc
