#pragma once

#include <span>
#include <vector>

#include "tcc/kernels.hpp"

namespace tcc::detail {

/// Dense LU factorization with partial pivoting of a row-major n x n matrix.
class DenseLu {
public:
    explicit DenseLu(std::vector<double> matrix, std::size_t n);
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    std::size_t n_;
    std::vector<double> lu_;
    std::vector<std::size_t> perm_;
};

inline constexpr std::size_t kDenseLimit = 2000;
inline constexpr double kIterationTolerance = 1e-12;
inline constexpr std::size_t kIterationCap = 1'000'000;

/// Solves x = b + Q x for a substochastic Q with spectral radius below one.
/// Direct elimination up to kDenseLimit unknowns, fixed-point iteration above.
std::vector<double> solve_absorbing(const kernels::SparseMatrix& q, std::span<const double> b);

/// max_i |x_i - (b_i + (Q x)_i)|
double fixed_point_residual(const kernels::SparseMatrix& q, std::span<const double> b, std::span<const double> x);

}  // namespace tcc::detail
