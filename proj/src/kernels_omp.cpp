#include <omp.h>

#include <cmath>
#include <unordered_map>

#include "kernels_common.hpp"

namespace tcc::kernels::parallel {

double affine_step(const SparseMatrix& q, std::span<const double> b, std::span<const double> x,
                   std::span<double> out) {
    double delta = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(q.n);
#pragma omp parallel for schedule(static) reduction(max : delta)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
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
    const auto shards = static_cast<std::ptrdiff_t>(detail::shard_count(n_tracks));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < shards; ++s) {
        detail::simulate_shard(table, start, k_max, seed, static_cast<std::size_t>(s),
                               detail::shard_slice(tracks, static_cast<std::size_t>(s)));
    }
    return tracks;
}

TransitionCounts count_transitions(std::span<const Track> tracks) {
    auto pack = [](Vertex a, Vertex b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
    TransitionCounts counts;
    const auto n = static_cast<std::ptrdiff_t>(tracks.size());
#pragma omp parallel
    {
        std::unordered_map<std::uint64_t, std::uint64_t> local;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto& states = tracks[static_cast<std::size_t>(i)].states;
            for (std::size_t j = 1; j < states.size(); ++j) ++local[pack(states[j - 1], states[j])];
        }
#pragma omp critical
        for (const auto& [key, c] : local) {
            counts[{static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu)}] += c;
        }
    }
    return counts;
}

}  // namespace tcc::kernels::parallel
