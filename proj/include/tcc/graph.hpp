#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcc {

/// Textual vertex identifier. A non-empty token with no whitespace; see
/// is_valid_vertex_id() for the exact alphabet.
using VertexId = std::string;

/// Dense vertex index inside one TransitionGraph. Indices follow the
/// lexicographic order of the identifiers, so comparing indices compares
/// tokens.
using Vertex = std::uint32_t;

inline constexpr double kRowTolerance = 1e-9;

enum class GraphMode { Deterministic, Multi, Stochastic };

std::string_view to_string(GraphMode mode);
std::optional<GraphMode> parse_mode(std::string_view text);

/// Arc as supplied by a caller, addressed by identifier.
struct ArcSpec {
    VertexId source;
    VertexId destination;
    std::optional<double> weight;
    std::optional<std::string> action;
};

/// Arc inside a built graph, addressed by index.
struct Arc {
    Vertex source = 0;
    Vertex destination = 0;
    std::optional<double> weight;
    std::optional<std::string> action;

    bool is_loop() const noexcept { return source == destination; }
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Tokens are non-empty, free of whitespace and of the separators
/// `, > ( ) =`, and do not start with `#`. Vertex ids additionally may not be
/// one of the text-format keywords.
bool is_valid_label(std::string_view label);
bool is_valid_vertex_id(std::string_view id);

/// Immutable transition graph with a single target vertex.
///
/// Arcs are stored grouped by source and sorted by destination, so
/// out_arcs(v) enumerates successors in lexicographic order. The target has
/// out-degree zero; at most one arc exists per ordered pair. Stochastic
/// graphs carry a weight on every arc and every non-empty row sums to one
/// within kRowTolerance. Instances are only produced by build_graph().
class TransitionGraph {
public:
    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<VertexId>& vertex_ids() const noexcept { return ids_; }
    const VertexId& id(Vertex v) const { return ids_.at(v); }
    std::optional<Vertex> find(std::string_view id) const;

    Vertex target() const noexcept { return target_; }
    GraphMode mode() const noexcept { return mode_; }
    const std::optional<std::string>& name() const noexcept { return name_; }

    std::span<const Arc> arcs() const noexcept { return arcs_; }
    std::span<const Arc> out_arcs(Vertex v) const;
    std::size_t out_degree(Vertex v) const { return out_arcs(v).size(); }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    bool has_loop(Vertex v) const;
    const Arc* find_arc(Vertex source, Vertex destination) const;

    friend bool operator==(const TransitionGraph&, const TransitionGraph&) = default;

private:
    friend TransitionGraph build_graph(std::vector<VertexId>, const VertexId&, std::vector<ArcSpec>,
                                       std::optional<GraphMode>, std::optional<std::string>);

    std::vector<VertexId> ids_;
    Vertex target_ = 0;
    GraphMode mode_ = GraphMode::Deterministic;
    std::optional<std::string> name_;
    std::vector<Arc> arcs_;
    std::vector<std::size_t> offsets_;
};

/// Validates and builds a graph. Vertices mentioned only by arcs are not
/// added implicitly: every endpoint must be listed (the target may be
/// omitted from `vertices`). When `declared` is empty the mode is inferred:
/// weights present gives Stochastic, every non-target out-degree equal to one
/// gives Deterministic, anything else Multi.
TransitionGraph build_graph(std::vector<VertexId> vertices, const VertexId& target, std::vector<ArcSpec> arcs,
                            std::optional<GraphMode> declared = std::nullopt,
                            std::optional<std::string> name = std::nullopt);

/// Non-zero entries of the out-row of `v`, ordered by destination.
struct StochasticRow {
    Vertex vertex = 0;
    std::vector<std::pair<Vertex, double>> entries;
};

StochasticRow stochastic_row(const TransitionGraph& graph, Vertex v);

/// Plain adjacency view used for backward searches. Not a TransitionGraph:
/// the reversed target usually has out-arcs.
struct Adjacency {
    std::vector<std::vector<Arc>> out;

    std::size_t size() const noexcept { return out.size(); }
    std::vector<Arc> arc_list() const;
};

Adjacency adjacency(const TransitionGraph& graph);
Adjacency reverse(const TransitionGraph& graph);
Adjacency reverse(const Adjacency& adj);

TransitionGraph parse_text(std::string_view text);
std::string serialize_text(const TransitionGraph& graph);

std::vector<VertexId> ids_of(const TransitionGraph& graph, std::span<const Vertex> vertices);

}  // namespace tcc
