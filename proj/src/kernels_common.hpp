#pragma once

#include <algorithm>
#include <random>

#include "tcc/kernels.hpp"

namespace tcc::kernels::detail {

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t invert(std::span<const double> cumulative, double u) {
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;  // rounding in the last partial sum
    return static_cast<std::size_t>(it - cumulative.begin());
}

inline Track sample_track(const SamplingTable& table, const StartTable& start, std::size_t k_max,
                          std::mt19937_64& rng) {
    Track track;
    Vertex v = start.vertex[invert(start.cumulative, uniform01(rng))];
    track.states.push_back(v);
    while (true) {
        if (v == table.target) {
            track.terminated = Termination::ReachedTarget;
            break;
        }
        const std::size_t lo = table.row_start[v], hi = table.row_start[v + 1];
        if (lo == hi) {
            track.terminated = Termination::DeadEnd;
            break;
        }
        if (track.transitions() >= k_max) {
            track.terminated = Termination::MaxSteps;
            break;
        }
        std::span<const double> row(table.cumulative.data() + lo, hi - lo);
        const std::size_t pick = lo + invert(row, uniform01(rng));
        if (table.has_actions) track.actions.push_back(table.action[pick]);
        v = table.destination[pick];
        track.states.push_back(v);
    }
    return track;
}

inline void simulate_shard(const SamplingTable& table, const StartTable& start, std::size_t k_max,
                           std::uint64_t seed, std::size_t shard, std::span<Track> out) {
    std::mt19937_64 rng(shard_seed(seed, shard));
    for (auto& track : out) track = sample_track(table, start, k_max, rng);
}

inline std::size_t shard_count(std::size_t n_tracks) { return (n_tracks + kShardSize - 1) / kShardSize; }

inline std::span<Track> shard_slice(std::vector<Track>& tracks, std::size_t shard) {
    const std::size_t lo = shard * kShardSize;
    return std::span<Track>(tracks).subspan(lo, std::min(kShardSize, tracks.size() - lo));
}

}  // namespace tcc::kernels::detail
