#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcc/graph.hpp"
#include "tcc/validate.hpp"

namespace tcc {

/// Stationary per-class decision: one outgoing arc for each non-target vertex
/// that has any. Applying it to a Multi graph yields a deterministic graph.
struct Policy {
    std::vector<std::optional<Arc>> choice;  // indexed by vertex; empty at the target and dead ends
    std::vector<Vertex> uncovered;           // vertices that cannot reach the target under any policy
};

/// Graph keeping only the chosen arcs (weights dropped, actions kept).
TransitionGraph apply_policy(const TransitionGraph& graph, const Policy& policy);

/// Shortest-path policy: every vertex that can reach the target takes an arc
/// on a shortest path to it (smallest destination on ties); the others keep
/// their smallest arc and are listed as uncovered.
Policy optimize_policy(const TransitionGraph& graph);

/// Lines `<vertex> -> <vertex>` sorted by source; uncovered vertices carry a
/// trailing `# uncovered` comment.
std::string format_policy(const TransitionGraph& graph, const Policy& policy);

inline constexpr double kInfiniteSteps = std::numeric_limits<double>::infinity();

struct HittingAnalysis {
    std::vector<double> absorb_prob;
    std::vector<double> expected_steps;  // +inf where absorption is not certain
    double absorb_residual = 0.0;        // max |p - (b + Q p)| over the solved unknowns
    double steps_residual = 0.0;         // max |t - (1 + Q t)| over the almost-sure set
};

/// Absorbing-chain analysis of a stochastic graph. Throws ModeViolation for
/// other modes and SolveFailure if a linear solve breaks down.
HittingAnalysis hitting_analysis(const TransitionGraph& graph);

/// Coverage and the secondary cost used to rank policies.
struct PolicyScore {
    Coverage coverage;
    double mean_steps = 0.0;  // over covered non-target vertices; 0 when there are none
};

/// Deterministic and Multi graphs use shortest path lengths; Stochastic
/// graphs use expected hitting times over the almost-sure set.
PolicyScore score(const TransitionGraph& graph);

enum class Winner { First, Second, Tie };

std::string_view to_string(Winner w);

struct SuperiorityReport {
    Winner winner = Winner::Tie;
    std::pair<Coverage, Coverage> coverage;
    std::pair<double, double> mean_steps;
    std::string detail;
};

inline constexpr double kTieTolerance = 1e-9;

/// Higher coverage wins; equal coverage falls back to smaller mean steps;
/// means within kTieTolerance tie. Both graphs must share vertices and target.
SuperiorityReport compare(const TransitionGraph& first, const TransitionGraph& second);

}  // namespace tcc
