#pragma once

// Data-parallel inner loops. Every kernel exists twice: an OpenMP version
// used by the library and a serial reference with identical arithmetic, kept
// for tests and the benchmark. Both produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "tcc/graph.hpp"
#include "tcc/tracks.hpp"

namespace tcc::kernels {

/// Square sparse matrix in compressed-row form.
struct SparseMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_start{0};
    std::vector<std::uint32_t> column;
    std::vector<double> value;
};

struct FixedPointResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double last_delta = 0.0;
    bool converged = false;
};

/// Cumulative out-rows of a stochastic graph, destinations in lexicographic
/// order, for inversion sampling.
struct SamplingTable {
    std::vector<std::size_t> row_start;
    std::vector<Vertex> destination;
    std::vector<double> cumulative;
    std::vector<std::int32_t> action;  // -1 for unlabelled arcs
    bool has_actions = false;
    Vertex target = 0;
};

struct StartTable {
    std::vector<Vertex> vertex;
    std::vector<double> cumulative;  // normalized, last entry 1
};

using TransitionCounts = std::map<std::pair<Vertex, Vertex>, std::uint64_t>;

/// Tracks are simulated in shards of this many; shard s draws from its own
/// generator seeded by (seed, s).
inline constexpr std::size_t kShardSize = 1024;

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard);

namespace serial {

/// out = b + Q x; returns max_i |out_i - x_i|.
double affine_step(const SparseMatrix& q, std::span<const double> b, std::span<const double> x,
                   std::span<double> out);
FixedPointResult fixed_point(const SparseMatrix& q, std::span<const double> b, double tolerance,
                             std::size_t max_iterations);
std::vector<Track> simulate(const SamplingTable& table, const StartTable& start, std::size_t n_tracks,
                            std::size_t k_max, std::uint64_t seed);
TransitionCounts count_transitions(std::span<const Track> tracks);

}  // namespace serial

namespace parallel {

double affine_step(const SparseMatrix& q, std::span<const double> b, std::span<const double> x,
                   std::span<double> out);
FixedPointResult fixed_point(const SparseMatrix& q, std::span<const double> b, double tolerance,
                             std::size_t max_iterations);
std::vector<Track> simulate(const SamplingTable& table, const StartTable& start, std::size_t n_tracks,
                            std::size_t k_max, std::uint64_t seed);
TransitionCounts count_transitions(std::span<const Track> tracks);

}  // namespace parallel

}  // namespace tcc::kernels
