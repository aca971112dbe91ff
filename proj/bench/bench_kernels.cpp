// Serial reference vs OpenMP kernels on synthetic inputs.
//   bench_kernels [scale]   scale multiplies the problem sizes (default 1)

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "tcc/kernels.hpp"

using namespace tcc;
using namespace tcc::kernels;

namespace {

template <class F>
double seconds(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t per_row) {
    SparseMatrix q;
    q.n = n;
    std::uniform_int_distribution<std::uint32_t> col(0, static_cast<std::uint32_t>(n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < per_row; ++k) {
            q.column.push_back(col(rng));
            q.value.push_back(0.95 / static_cast<double>(per_row));
        }
        q.row_start.push_back(q.column.size());
    }
    return q;
}

// Vertex 0 is the target; every other vertex has `per_row` uniform arcs.
SamplingTable random_table(std::mt19937_64& rng, std::size_t n, std::size_t per_row) {
    SamplingTable t;
    t.target = 0;
    t.row_start = {0, 0};
    std::uniform_int_distribution<Vertex> dest(0, static_cast<Vertex>(n - 1));
    for (std::size_t v = 1; v < n; ++v) {
        for (std::size_t k = 1; k <= per_row; ++k) {
            t.destination.push_back(dest(rng));
            t.cumulative.push_back(static_cast<double>(k) / static_cast<double>(per_row));
            t.action.push_back(-1);
        }
        t.row_start.push_back(t.destination.size());
    }
    return t;
}

void row(const char* name, const char* size, double serial, double parallel, bool same) {
    std::printf("%-18s %-22s %10.4f %10.4f %8.2fx  %s\n", name, size, serial, parallel, serial / parallel,
                same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t scale = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1;
    std::mt19937_64 rng(7);
    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-18s %-22s %10s %10s %9s\n", "kernel", "size", "serial s", "omp s", "speedup");

    {
        const std::size_t n = 200000 * scale;
        auto q = random_matrix(rng, n, 8);
        std::vector<double> b(n, 1.0);
        FixedPointResult s, p;
        double ts = seconds([&] { s = serial::fixed_point(q, b, 1e-12, 1000000); });
        double tp = seconds([&] { p = parallel::fixed_point(q, b, 1e-12, 1000000); });
        char size[64];
        std::snprintf(size, sizeof size, "n=%zu it=%zu", n, s.iterations);
        row("fixed_point", size, ts, tp, s.x == p.x);
    }

    {
        auto table = random_table(rng, 64, 4);
        StartTable start{{1}, {1.0}};
        const std::size_t n = 200000 * scale;
        std::vector<Track> s, p;
        double ts = seconds([&] { s = serial::simulate(table, start, n, 10000, 1); });
        double tp = seconds([&] { p = parallel::simulate(table, start, n, 10000, 1); });
        char size[64];
        std::snprintf(size, sizeof size, "tracks=%zu", n);
        row("simulate", size, ts, tp, s == p);

        TransitionCounts cs, cp;
        double cts = seconds([&] { cs = serial::count_transitions(s); });
        double ctp = seconds([&] { cp = parallel::count_transitions(p); });
        row("count_transitions", size, cts, ctp, cs == cp);
    }
    return 0;
}
