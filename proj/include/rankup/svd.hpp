#pragma once

#include <cstddef>
#include <vector>

#include "rankup/matrix.hpp"

namespace rankup {

struct ToleranceConfig {
    double rank_rel_tol = 1e-10;
    double penrose_tol = 1e-8;
    double subspace_tol = 1e-8;
};

// Thin SVD truncated at the numerical rank: u is m x r with orthonormal
// columns, sigma holds r positive values in non-increasing order, v is
// n x r. rank_threshold is the truncation cutoff actually used.
struct SvdFactors {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
    std::size_t numerical_rank = 0;
    double rank_threshold = 0.0;

    Matrix reconstruct() const;  // u * diag(sigma) * v^T
};

// One-sided Jacobi with cyclic sweeps. Rank cutoff is
// rank_rel_tol * max(rows, cols) * sigma_max.
SvdFactors svd(const Matrix& a, const ToleranceConfig& tol = {});

std::size_t numerical_rank(const Matrix& a, const ToleranceConfig& tol = {});

// Moore-Penrose pseudoinverse via the SVD: v * diag(1/sigma) * u^T.
// This is the oracle every update identity is tested against.
Matrix oracle_pinv(const Matrix& a, const ToleranceConfig& tol = {});

}  // namespace rankup
