#include "tcc/tracks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcc/error.hpp"
#include "tcc/kernels.hpp"

namespace tcc {

std::string_view to_string(Termination t) {
    switch (t) {
    case Termination::ReachedTarget: return "reached-target";
    case Termination::MaxSteps: return "max-steps";
    case Termination::DeadEnd: return "dead-end";
    }
    return "max-steps";
}

namespace {

struct Prepared {
    kernels::SamplingTable table;
    kernels::StartTable start;
    std::vector<std::string> labels;
};

Prepared prepare(const TransitionGraph& graph, const Start& start) {
    if (graph.mode() != GraphMode::Stochastic) {
        throw Error(ErrorKind::ModeViolation,
                    "simulation needs a stochastic graph, got " + std::string(to_string(graph.mode())));
    }
    Prepared p;
    auto& t = p.table;
    t.target = graph.target();
    t.row_start.assign(1, 0);
    for (Vertex v = 0; v < graph.size(); ++v) {
        double acc = 0.0;
        for (const auto& a : graph.out_arcs(v)) {
            acc += *a.weight;
            t.destination.push_back(a.destination);
            t.cumulative.push_back(acc);
            std::int32_t id = -1;
            if (a.action) {
                auto it = std::find(p.labels.begin(), p.labels.end(), *a.action);
                id = static_cast<std::int32_t>(it - p.labels.begin());
                if (it == p.labels.end()) p.labels.push_back(*a.action);
            }
            t.action.push_back(id);
        }
        t.row_start.push_back(t.destination.size());
    }
    t.has_actions = !p.labels.empty();

    auto lookup = [&](const VertexId& id) {
        auto v = graph.find(id);
        if (!v) throw Error(ErrorKind::StartUnknown, "start vertex '" + id + "' is not in the graph");
        return *v;
    };
    if (const auto* single = std::get_if<VertexId>(&start)) {
        p.start.vertex = {lookup(*single)};
        p.start.cumulative = {1.0};
    } else {
        const auto& dist = std::get<StartDistribution>(start);
        std::vector<std::pair<Vertex, double>> entries;
        double total = 0.0;
        for (const auto& [id, w] : dist.weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorKind::InvalidWeight, "negative start weight");
            if (w == 0.0) continue;
            entries.emplace_back(lookup(id), w);
            total += w;
        }
        if (entries.empty()) throw Error(ErrorKind::StartUnknown, "start distribution has no mass");
        std::sort(entries.begin(), entries.end());
        double acc = 0.0;
        for (const auto& [v, w] : entries) {
            acc += w;
            p.start.vertex.push_back(v);
            p.start.cumulative.push_back(acc / total);
        }
        p.start.cumulative.back() = 1.0;
    }
    return p;
}

template <typename SimulateFn>
Trellis run(const TransitionGraph& graph, const Start& start, std::size_t n_tracks, std::size_t k_max,
            std::uint64_t seed, SimulateFn simulate) {
    Prepared p = prepare(graph, start);
    Trellis trellis;
    trellis.vertex_ids = graph.vertex_ids();
    trellis.target = graph.target();
    trellis.k_max = k_max;
    trellis.action_labels = std::move(p.labels);
    trellis.tracks = simulate(p.table, p.start, n_tracks, k_max, seed);
    return trellis;
}

CountMatrix to_count_matrix(const Trellis& trellis, const kernels::TransitionCounts& raw) {
    CountMatrix m;
    m.universe.insert(trellis.vertex_ids.begin(), trellis.vertex_ids.end());
    for (const auto& [key, c] : raw) m.counts[{trellis.vertex_ids[key.first], trellis.vertex_ids[key.second]}] = c;
    return m;
}

}  // namespace

Trellis simulate_trellis(const TransitionGraph& graph, const Start& start, std::size_t n_tracks, std::size_t k_max,
                         std::uint64_t seed) {
    return run(graph, start, n_tracks, k_max, seed, kernels::parallel::simulate);
}

Trellis simulate_trellis_serial(const TransitionGraph& graph, const Start& start, std::size_t n_tracks,
                                std::size_t k_max, std::uint64_t seed) {
    return run(graph, start, n_tracks, k_max, seed, kernels::serial::simulate);
}

double evaluate_outcome(const Track& track, const OutcomeSpec& spec, Vertex target) {
    const bool reached = !track.states.empty() && track.states.back() == target;
    switch (spec.kind) {
    case OutcomeKind::ReachedIndicator: return reached ? 1.0 : 0.0;
    case OutcomeKind::StepsToTarget:
        return reached ? static_cast<double>(track.transitions()) : std::numeric_limits<double>::infinity();
    case OutcomeKind::FractionInState: {
        if (track.states.empty()) return 0.0;
        auto hits = std::count(track.states.begin(), track.states.end(), spec.state);
        return static_cast<double>(hits) / static_cast<double>(track.states.size());
    }
    }
    return 0.0;
}

CountMatrix aggregate_counts(const Trellis& trellis) {
    return to_count_matrix(trellis, kernels::parallel::count_transitions(trellis.tracks));
}

CountMatrix aggregate_counts_serial(const Trellis& trellis) {
    return to_count_matrix(trellis, kernels::serial::count_transitions(trellis.tracks));
}

Estimate estimate_graph(const CountMatrix& counts, const VertexId& target) {
    std::map<VertexId, std::uint64_t> row_total;
    for (const auto& [key, c] : counts.counts) row_total[key.first] += c;
    if (row_total[target] > 0) {
        throw Error(ErrorKind::TargetHasOutgoing, "target '" + target + "' has outgoing transition counts");
    }

    std::vector<VertexId> vertices(counts.universe.begin(), counts.universe.end());
    std::vector<ArcSpec> arcs;
    for (const auto& [key, c] : counts.counts) {
        vertices.push_back(key.first);
        vertices.push_back(key.second);
        if (c == 0) continue;
        arcs.push_back({key.first, key.second,
                        static_cast<double>(c) / static_cast<double>(row_total[key.first]), std::nullopt});
    }
    Estimate e{build_graph(vertices, target, std::move(arcs), GraphMode::Stochastic), {}};
    for (Vertex v = 0; v < e.graph.size(); ++v) {
        if (v != e.graph.target() && e.graph.out_degree(v) == 0) e.empty_rows.push_back(e.graph.id(v));
    }
    return e;
}

}  // namespace tcc
