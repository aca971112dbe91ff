#include "linear_solve.hpp"

#include <cmath>
#include <numeric>

#include "tcc/error.hpp"

namespace tcc::detail {

DenseLu::DenseLu(std::vector<double> matrix, std::size_t n) : n_(n), lu_(std::move(matrix)), perm_(n) {
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    auto at = [&](std::size_t r, std::size_t c) -> double& { return lu_[r * n_ + c]; };
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n_; ++r) {
            if (std::abs(at(r, k)) > std::abs(at(pivot, k))) pivot = r;
        }
        if (!(std::abs(at(pivot, k)) > 1e-300)) throw Error(ErrorKind::SolveFailure, "singular absorbing system");
        if (pivot != k) {
            for (std::size_t c = 0; c < n_; ++c) std::swap(at(k, c), at(pivot, c));
            std::swap(perm_[k], perm_[pivot]);
        }
        const double diag = at(k, k);
        for (std::size_t r = k + 1; r < n_; ++r) {
            const double f = at(r, k) / diag;
            at(r, k) = f;
            if (f == 0.0) continue;
            for (std::size_t c = k + 1; c < n_; ++c) at(r, c) -= f * at(k, c);
        }
    }
}

std::vector<double> DenseLu::solve(std::span<const double> rhs) const {
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t c = 0; c < i; ++c) x[i] -= lu_[i * n_ + c] * x[c];
    }
    for (std::size_t i = n_; i-- > 0;) {
        for (std::size_t c = i + 1; c < n_; ++c) x[i] -= lu_[i * n_ + c] * x[c];
        x[i] /= lu_[i * n_ + i];
    }
    return x;
}

double fixed_point_residual(const kernels::SparseMatrix& q, std::span<const double> b, std::span<const double> x) {
    std::vector<double> image(q.n);
    kernels::serial::affine_step(q, b, x, image);
    double worst = 0.0;
    for (std::size_t i = 0; i < q.n; ++i) worst = std::max(worst, std::abs(image[i] - x[i]));
    return worst;
}

std::vector<double> solve_absorbing(const kernels::SparseMatrix& q, std::span<const double> b) {
    const std::size_t n = q.n;
    if (n == 0) return {};
    if (n > kDenseLimit) {
        auto r = kernels::parallel::fixed_point(q, b, kIterationTolerance, kIterationCap);
        if (!r.converged) {
            throw Error(ErrorKind::SolveFailure,
                        "fixed-point iteration did not converge (last delta " + std::to_string(r.last_delta) + ")");
        }
        return std::move(r.x);
    }

    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = 1.0;
        for (std::size_t k = q.row_start[i]; k < q.row_start[i + 1]; ++k) a[i * n + q.column[k]] -= q.value[k];
    }
    const DenseLu lu(std::move(a), n);
    std::vector<double> x = lu.solve(b);

    // A couple of refinement sweeps keep the residual at rounding level even
    // when hitting times are large.
    std::vector<double> image(n), correction_rhs(n);
    for (int sweep = 0; sweep < 3; ++sweep) {
        kernels::serial::affine_step(q, b, x, image);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            correction_rhs[i] = image[i] - x[i];
            worst = std::max(worst, std::abs(correction_rhs[i]));
        }
        if (worst == 0.0) break;
        const auto dx = lu.solve(correction_rhs);
        for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw Error(ErrorKind::SolveFailure, "non-finite solution");
    }
    return x;
}

}  // namespace tcc::detail
