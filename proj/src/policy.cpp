#include "tcc/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "linear_solve.hpp"
#include "tcc/decompose.hpp"
#include "tcc/error.hpp"

namespace tcc {

TransitionGraph apply_policy(const TransitionGraph& graph, const Policy& policy) {
    std::vector<ArcSpec> arcs;
    for (Vertex v = 0; v < graph.size() && v < policy.choice.size(); ++v) {
        const auto& arc = policy.choice[v];
        if (!arc) continue;
        if (arc->source != v || !graph.find_arc(arc->source, arc->destination)) {
            throw Error(ErrorKind::InternalInconsistency, "policy arc at '" + graph.id(v) + "' is not in the graph");
        }
        arcs.push_back({graph.id(arc->source), graph.id(arc->destination), std::nullopt, arc->action});
    }
    return build_graph(graph.vertex_ids(), graph.id(graph.target()), std::move(arcs), std::nullopt, graph.name());
}

Policy optimize_policy(const TransitionGraph& graph) {
    const TargetCore core = target_core(graph);
    Policy policy;
    policy.choice.resize(graph.size());
    for (const auto& a : core.real_arcs) policy.choice[a.source] = a;
    for (Vertex v = 0; v < graph.size(); ++v) {
        if (v == graph.target() || core.is_member[v]) continue;
        policy.uncovered.push_back(v);
        auto row = graph.out_arcs(v);
        if (!row.empty()) policy.choice[v] = row.front();
    }
    return policy;
}

std::string format_policy(const TransitionGraph& graph, const Policy& policy) {
    std::vector<bool> uncovered(graph.size(), false);
    for (Vertex v : policy.uncovered) uncovered[v] = true;
    std::string out;
    for (Vertex v = 0; v < graph.size(); ++v) {
        if (v == graph.target()) continue;
        const auto& arc = v < policy.choice.size() ? policy.choice[v] : std::nullopt;
        if (arc) {
            out += graph.id(v) + " -> " + graph.id(arc->destination);
            if (uncovered[v]) out += "  # uncovered";
        } else {
            out += "# " + graph.id(v) + " has no outgoing arc  # uncovered";
        }
        out += "\n";
    }
    return out;
}

namespace {

// Builds x = b + Q x over the vertices flagged in `unknown`.
struct AbsorbingSystem {
    std::vector<std::size_t> slot;  // vertex -> unknown index or npos
    std::vector<Vertex> vertex;     // unknown index -> vertex
    kernels::SparseMatrix q;
};

AbsorbingSystem make_system(const TransitionGraph& graph, const std::vector<bool>& unknown) {
    AbsorbingSystem s;
    s.slot.assign(graph.size(), static_cast<std::size_t>(-1));
    for (Vertex v = 0; v < graph.size(); ++v) {
        if (unknown[v]) {
            s.slot[v] = s.vertex.size();
            s.vertex.push_back(v);
        }
    }
    s.q.n = s.vertex.size();
    for (Vertex v : s.vertex) {
        for (const auto& a : graph.out_arcs(v)) {
            if (!unknown[a.destination]) continue;
            s.q.column.push_back(static_cast<std::uint32_t>(s.slot[a.destination]));
            s.q.value.push_back(*a.weight);
        }
        s.q.row_start.push_back(s.q.column.size());
    }
    return s;
}

std::vector<bool> mask_of(std::size_t n, const std::vector<Vertex>& members) {
    std::vector<bool> m(n, false);
    for (Vertex v : members) m[v] = true;
    return m;
}

}  // namespace

HittingAnalysis hitting_analysis(const TransitionGraph& graph) {
    if (graph.mode() != GraphMode::Stochastic) {
        throw Error(ErrorKind::ModeViolation, "hitting analysis needs a stochastic graph, got " +
                                                  std::string(to_string(graph.mode())));
    }
    const std::size_t n = graph.size();
    const ReachabilitySets sets = reachability_sets(graph);
    const std::vector<bool> possible = mask_of(n, sets.possible);
    const std::vector<bool> almost = mask_of(n, sets.almost_sure);

    HittingAnalysis h;
    h.absorb_prob.assign(n, 0.0);
    h.expected_steps.assign(n, kInfiniteSteps);
    for (Vertex v = 0; v < n; ++v) {
        if (almost[v]) h.absorb_prob[v] = 1.0;
    }

    // p(v) = sum_w F_v(w) p(w) on vertices that may but need not be absorbed.
    std::vector<bool> uncertain(n, false);
    for (Vertex v = 0; v < n; ++v) uncertain[v] = possible[v] && !almost[v];
    {
        const AbsorbingSystem sys = make_system(graph, uncertain);
        std::vector<double> b(sys.q.n, 0.0);
        for (std::size_t i = 0; i < sys.q.n; ++i) {
            for (const auto& a : graph.out_arcs(sys.vertex[i])) {
                if (almost[a.destination]) b[i] += *a.weight;
            }
        }
        const auto p = detail::solve_absorbing(sys.q, b);
        h.absorb_residual = detail::fixed_point_residual(sys.q, b, p);
        for (std::size_t i = 0; i < sys.q.n; ++i) h.absorb_prob[sys.vertex[i]] = std::clamp(p[i], 0.0, 1.0);
    }

    // t(v) = 1 + sum_w F_v(w) t(w) on the almost-sure set minus the target.
    std::vector<bool> transient = almost;
    transient[graph.target()] = false;
    {
        const AbsorbingSystem sys = make_system(graph, transient);
        const std::vector<double> ones(sys.q.n, 1.0);
        const auto t = detail::solve_absorbing(sys.q, ones);
        h.steps_residual = detail::fixed_point_residual(sys.q, ones, t);
        for (std::size_t i = 0; i < sys.q.n; ++i) h.expected_steps[sys.vertex[i]] = t[i];
    }
    h.expected_steps[graph.target()] = 0.0;
    return h;
}

PolicyScore score(const TransitionGraph& graph) {
    PolicyScore s;
    double sum = 0.0;
    std::size_t count = 0;
    if (graph.mode() == GraphMode::Stochastic) {
        const auto h = hitting_analysis(graph);
        s.coverage = {reachability_sets(graph).possible.size(), graph.size()};
        for (Vertex v = 0; v < graph.size(); ++v) {
            if (v == graph.target() || !std::isfinite(h.expected_steps[v])) continue;
            sum += h.expected_steps[v];
            ++count;
        }
    } else {
        const TargetCore core = target_core(graph);
        s.coverage = {core.members.size(), graph.size()};
        for (Vertex v : core.members) {
            if (v == graph.target()) continue;
            sum += static_cast<double>(*core.layer[v]);
            ++count;
        }
    }
    s.mean_steps = count == 0 ? 0.0 : sum / static_cast<double>(count);
    return s;
}

std::string_view to_string(Winner w) {
    switch (w) {
    case Winner::First: return "first";
    case Winner::Second: return "second";
    case Winner::Tie: return "tie";
    }
    return "tie";
}

SuperiorityReport compare(const TransitionGraph& first, const TransitionGraph& second) {
    if (first.vertex_ids() != second.vertex_ids()) {
        throw Error(ErrorKind::VertexSetMismatch, "graphs are defined over different vertex sets");
    }
    if (first.target() != second.target()) {
        throw Error(ErrorKind::TargetMismatch, "graphs have different targets ('" + first.id(first.target()) +
                                                   "' vs '" + second.id(second.target()) + "')");
    }
    const PolicyScore a = score(first), b = score(second);
    SuperiorityReport r;
    r.coverage = {a.coverage, b.coverage};
    r.mean_steps = {a.mean_steps, b.mean_steps};

    const auto lhs = a.coverage.covered * b.coverage.total, rhs = b.coverage.covered * a.coverage.total;
    const char* reason;
    if (lhs != rhs) {
        r.winner = lhs > rhs ? Winner::First : Winner::Second;
        reason = "higher coverage";
    } else if (std::abs(a.mean_steps - b.mean_steps) <= kTieTolerance) {
        r.winner = Winner::Tie;
        reason = "equal coverage and mean steps";
    } else {
        r.winner = a.mean_steps < b.mean_steps ? Winner::First : Winner::Second;
        reason = "equal coverage, fewer mean steps";
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "coverage %zu/%zu vs %zu/%zu; mean steps %.6f vs %.6f; %s",
                  a.coverage.covered, a.coverage.total, b.coverage.covered, b.coverage.total, a.mean_steps,
                  b.mean_steps, reason);
    r.detail = buf;
    return r;
}

}  // namespace tcc
