#include <cmath>

#include "kernels_common.hpp"

namespace tcc::kernels {

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
    // splitmix64 finalizer over (seed, shard)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (shard + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace serial {

double affine_step(const SparseMatrix& q, std::span<const double> b, std::span<const double> x,
                   std::span<double> out) {
    double delta = 0.0;
    for (std::size_t i = 0; i < q.n; ++i) {
        double acc = b[i];
        for (std::size_t k = q.row_start[i]; k < q.row_start[i + 1]; ++k) acc += q.value[k] * x[q.column[k]];
        out[i] = acc;
        delta = std::max(delta, std::abs(acc - x[i]));
    }
    return delta;
}

FixedPointResult fixed_point(const SparseMatrix& q, std::span<const double> b, double tolerance,
                             std::size_t max_iterations) {
    FixedPointResult r;
    r.x.assign(q.n, 0.0);
    std::vector<double> next(q.n);
    while (r.iterations < max_iterations) {
        r.last_delta = affine_step(q, b, r.x, next);
        r.x.swap(next);
        ++r.iterations;
        if (r.last_delta <= tolerance) {
            r.converged = true;
            break;
        }
    }
    return r;
}

std::vector<Track> simulate(const SamplingTable& table, const StartTable& start, std::size_t n_tracks,
                            std::size_t k_max, std::uint64_t seed) {
    std::vector<Track> tracks(n_tracks);
    const std::size_t shards = detail::shard_count(n_tracks);
    for (std::size_t s = 0; s < shards; ++s) {
        detail::simulate_shard(table, start, k_max, seed, s, detail::shard_slice(tracks, s));
    }
    return tracks;
}

TransitionCounts count_transitions(std::span<const Track> tracks) {
    TransitionCounts counts;
    for (const auto& t : tracks) {
        for (std::size_t i = 1; i < t.states.size(); ++i) ++counts[{t.states[i - 1], t.states[i]}];
    }
    return counts;
}

}  // namespace serial
}  // namespace tcc::kernels
