#include "tcc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tcc/error.hpp"

namespace tcc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::InvalidVertexId: return "InvalidVertexId";
    case ErrorKind::MissingTarget: return "MissingTarget";
    case ErrorKind::MultipleTargets: return "MultipleTargets";
    case ErrorKind::DuplicateArc: return "DuplicateArc";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::TargetHasOutgoing: return "TargetHasOutgoing";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::MixedWeights: return "MixedWeights";
    case ErrorKind::RowNotNormalized: return "RowNotNormalized";
    case ErrorKind::ModeViolation: return "ModeViolation";
    case ErrorKind::AnnotationMismatch: return "AnnotationMismatch";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::VertexSetMismatch: return "VertexSetMismatch";
    case ErrorKind::TargetMismatch: return "TargetMismatch";
    case ErrorKind::StartUnknown: return "StartUnknown";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::string(to_string(kind)) + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

std::string_view to_string(GraphMode mode) {
    switch (mode) {
    case GraphMode::Deterministic: return "deterministic";
    case GraphMode::Multi: return "multi";
    case GraphMode::Stochastic: return "stochastic";
    }
    return "multi";
}

std::optional<GraphMode> parse_mode(std::string_view text) {
    if (text == "deterministic") return GraphMode::Deterministic;
    if (text == "multi") return GraphMode::Multi;
    if (text == "stochastic") return GraphMode::Stochastic;
    return std::nullopt;
}

namespace {

constexpr std::string_view kReserved[] = {"graph", "target", "mode", "vertex", "initial", "final"};

}  // namespace

bool is_valid_label(std::string_view label) {
    if (label.empty() || label.front() == '#') return false;
    for (char c : label) {
        auto u = static_cast<unsigned char>(c);
        if (u <= 0x20 || u == 0x7f) return false;
        if (c == ',' || c == '>' || c == '(' || c == ')' || c == '=') return false;
    }
    return true;
}

bool is_valid_vertex_id(std::string_view id) {
    return is_valid_label(id) && std::find(std::begin(kReserved), std::end(kReserved), id) == std::end(kReserved);
}

std::optional<Vertex> TransitionGraph::find(std::string_view id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<Vertex>(it - ids_.begin());
}

std::span<const Arc> TransitionGraph::out_arcs(Vertex v) const {
    if (v >= ids_.size()) throw std::out_of_range("vertex index out of range");
    return std::span<const Arc>(arcs_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool TransitionGraph::has_loop(Vertex v) const { return find_arc(v, v) != nullptr; }

const Arc* TransitionGraph::find_arc(Vertex source, Vertex destination) const {
    auto row = out_arcs(source);
    auto it = std::lower_bound(row.begin(), row.end(), destination,
                               [](const Arc& a, Vertex d) { return a.destination < d; });
    if (it == row.end() || it->destination != destination) return nullptr;
    return &*it;
}

TransitionGraph build_graph(std::vector<VertexId> vertices, const VertexId& target, std::vector<ArcSpec> arcs,
                            std::optional<GraphMode> declared, std::optional<std::string> name) {
    vertices.push_back(target);
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (const auto& id : vertices) {
        if (!is_valid_vertex_id(id)) throw Error(ErrorKind::InvalidVertexId, "invalid vertex id '" + id + "'");
    }

    TransitionGraph g;
    g.ids_ = std::move(vertices);
    g.name_ = std::move(name);
    g.target_ = *g.find(target);

    auto lookup = [&](const VertexId& id) {
        auto v = g.find(id);
        if (!v) throw Error(ErrorKind::DanglingEndpoint, "arc endpoint '" + id + "' is not a declared vertex");
        return *v;
    };

    std::size_t weighted = 0;
    g.arcs_.reserve(arcs.size());
    for (auto& spec : arcs) {
        Arc a{lookup(spec.source), lookup(spec.destination), spec.weight, std::move(spec.action)};
        if (a.source == g.target_) {
            throw Error(ErrorKind::TargetHasOutgoing,
                        "target '" + g.ids_[g.target_] + "' has outgoing arc to '" + spec.destination + "'");
        }
        if (a.weight) {
            if (!std::isfinite(*a.weight) || *a.weight <= 0.0 || *a.weight > 1.0) {
                std::ostringstream os;
                os << "weight " << *a.weight << " on " << spec.source << " -> " << spec.destination
                   << " is outside (0, 1]";
                throw Error(ErrorKind::InvalidWeight, os.str());
            }
            ++weighted;
        }
        if (a.action && !is_valid_label(*a.action)) {
            throw Error(ErrorKind::Syntax, "invalid action label '" + *a.action + "'");
        }
        g.arcs_.push_back(std::move(a));
    }
    if (weighted != 0 && weighted != g.arcs_.size()) {
        throw Error(ErrorKind::MixedWeights, "some arcs carry weights and some do not");
    }

    std::sort(g.arcs_.begin(), g.arcs_.end(), [](const Arc& x, const Arc& y) {
        return std::tie(x.source, x.destination) < std::tie(y.source, y.destination);
    });
    for (std::size_t i = 1; i < g.arcs_.size(); ++i) {
        if (g.arcs_[i].source == g.arcs_[i - 1].source && g.arcs_[i].destination == g.arcs_[i - 1].destination) {
            throw Error(ErrorKind::DuplicateArc, "duplicate arc " + g.ids_[g.arcs_[i].source] + " -> " +
                                                     g.ids_[g.arcs_[i].destination]);
        }
    }

    g.offsets_.assign(g.ids_.size() + 1, 0);
    for (const auto& a : g.arcs_) ++g.offsets_[a.source + 1];
    for (std::size_t v = 0; v < g.ids_.size(); ++v) g.offsets_[v + 1] += g.offsets_[v];

    const bool has_weights = weighted != 0;
    if (has_weights) {
        for (Vertex v = 0; v < g.ids_.size(); ++v) {
            auto row = g.out_arcs(v);
            if (row.empty()) continue;
            double sum = 0.0;
            for (const auto& a : row) sum += *a.weight;
            if (std::abs(sum - 1.0) > kRowTolerance) {
                std::ostringstream os;
                os.precision(17);
                os << "row of '" << g.ids_[v] << "' sums to " << sum;
                throw Error(ErrorKind::RowNotNormalized, os.str());
            }
        }
    }

    bool all_single = true;
    for (Vertex v = 0; v < g.ids_.size(); ++v) {
        if (v != g.target_ && g.out_degree(v) != 1) all_single = false;
    }

    if (!declared) {
        g.mode_ = has_weights ? GraphMode::Stochastic : all_single ? GraphMode::Deterministic : GraphMode::Multi;
    } else {
        g.mode_ = *declared;
        if (*declared == GraphMode::Deterministic && !all_single) {
            for (Vertex v = 0; v < g.ids_.size(); ++v) {
                if (v != g.target_ && g.out_degree(v) != 1) {
                    throw Error(ErrorKind::ModeViolation, "deterministic graph requires out-degree 1 at '" +
                                                              g.ids_[v] + "', found " +
                                                              std::to_string(g.out_degree(v)));
                }
            }
        }
        if (*declared == GraphMode::Stochastic && !has_weights && !g.arcs_.empty()) {
            throw Error(ErrorKind::ModeViolation, "stochastic graph requires a weight on every arc");
        }
    }
    return g;
}

StochasticRow stochastic_row(const TransitionGraph& graph, Vertex v) {
    StochasticRow row{v, {}};
    for (const auto& a : graph.out_arcs(v)) row.entries.emplace_back(a.destination, a.weight.value_or(0.0));
    return row;
}

std::vector<Arc> Adjacency::arc_list() const {
    std::vector<Arc> all;
    for (const auto& row : out) all.insert(all.end(), row.begin(), row.end());
    return all;
}

Adjacency adjacency(const TransitionGraph& graph) {
    Adjacency adj;
    adj.out.resize(graph.size());
    for (const auto& a : graph.arcs()) adj.out[a.source].push_back(a);
    return adj;
}

Adjacency reverse(const Adjacency& adj) {
    Adjacency rev;
    rev.out.resize(adj.size());
    for (const auto& row : adj.out) {
        for (const auto& a : row) {
            Arc r = a;
            std::swap(r.source, r.destination);
            rev.out[r.source].push_back(std::move(r));
        }
    }
    for (auto& row : rev.out) {
        std::sort(row.begin(), row.end(), [](const Arc& x, const Arc& y) { return x.destination < y.destination; });
    }
    return rev;
}

Adjacency reverse(const TransitionGraph& graph) { return reverse(adjacency(graph)); }

std::vector<VertexId> ids_of(const TransitionGraph& graph, std::span<const Vertex> vertices) {
    std::vector<VertexId> out;
    out.reserve(vertices.size());
    for (Vertex v : vertices) out.push_back(graph.id(v));
    return out;
}

}  // namespace tcc
