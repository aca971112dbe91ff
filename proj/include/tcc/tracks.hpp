#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tcc/graph.hpp"

namespace tcc {

enum class Termination { ReachedTarget, MaxSteps, DeadEnd };

std::string_view to_string(Termination t);

/// One object's path: states S1, S2, ... and, when the generating graph has
/// action labels, the action applied on each transition (actions[i] labels
/// states[i] -> states[i+1], -1 when the arc has none).
struct Track {
    std::vector<Vertex> states;
    std::vector<std::int32_t> actions;
    Termination terminated = Termination::MaxSteps;

    std::size_t transitions() const noexcept { return states.empty() ? 0 : states.size() - 1; }
    friend bool operator==(const Track&, const Track&) = default;
};

struct Trellis {
    std::vector<VertexId> vertex_ids;
    Vertex target = 0;
    std::vector<std::string> action_labels;
    std::size_t k_max = 0;
    std::vector<Track> tracks;

    friend bool operator==(const Trellis&, const Trellis&) = default;
};

inline constexpr std::size_t kDefaultMaxSteps = 10000;

/// Initial-state weights; need not be normalized.
struct StartDistribution {
    std::vector<std::pair<VertexId, double>> weights;
};

using Start = std::variant<VertexId, StartDistribution>;

/// Samples `n_tracks` independent tracks through a stochastic graph, each
/// stopping at the target, at a dead end, or after `k_max` transitions.
/// Output depends only on the inputs and `seed`, not on the thread count.
Trellis simulate_trellis(const TransitionGraph& graph, const Start& start, std::size_t n_tracks,
                         std::size_t k_max, std::uint64_t seed);

/// Same sampling, single-threaded. Kept as the reference the parallel path is
/// tested against.
Trellis simulate_trellis_serial(const TransitionGraph& graph, const Start& start, std::size_t n_tracks,
                                std::size_t k_max, std::uint64_t seed);

enum class OutcomeKind { ReachedIndicator, StepsToTarget, FractionInState };

struct OutcomeSpec {
    OutcomeKind kind = OutcomeKind::ReachedIndicator;
    Vertex state = 0;  // FractionInState only

    static OutcomeSpec reached() { return {OutcomeKind::ReachedIndicator, 0}; }
    static OutcomeSpec steps() { return {OutcomeKind::StepsToTarget, 0}; }
    static OutcomeSpec fraction_in(Vertex s) { return {OutcomeKind::FractionInState, s}; }
};

/// StepsToTarget is +infinity for tracks that never reach the target.
double evaluate_outcome(const Track& track, const OutcomeSpec& spec, Vertex target);

struct CountMatrix {
    std::set<VertexId> universe;
    std::map<std::pair<VertexId, VertexId>, std::uint64_t> counts;

    friend bool operator==(const CountMatrix&, const CountMatrix&) = default;
};

CountMatrix aggregate_counts(const Trellis& trellis);
CountMatrix aggregate_counts_serial(const Trellis& trellis);

struct Estimate {
    TransitionGraph graph;
    std::vector<VertexId> empty_rows;  // non-target vertices left as dead ends
};

/// Row-normalizes first-order counts into a stochastic graph. Zero counts
/// produce no arc. Throws TargetHasOutgoing if the target row has mass.
Estimate estimate_graph(const CountMatrix& counts, const VertexId& target);

/// Summary lines that accompany count files but are not used for estimation.
struct CountSummary {
    std::vector<std::pair<VertexId, std::uint64_t>> initial;
    std::vector<std::pair<VertexId, std::uint64_t>> final;
};

/// Counts file: `<src> <dst> <count>` per line, `#` comments, optional
/// `initial <v> <n>` and `final <v> <n>` summary lines.
CountMatrix parse_counts(std::string_view text, CountSummary* summary = nullptr);
std::string serialize_counts(const CountMatrix& counts);

/// One track per line: states joined by `>`, the action taken in a state in
/// parentheses after it, e.g. `a(med)>b(cbt)>v0`.
std::string export_trellis(const Trellis& trellis);

}  // namespace tcc
