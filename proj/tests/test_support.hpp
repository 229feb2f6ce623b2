#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "rankup/matrix.hpp"
#include "rankup/subspace.hpp"
#include "rankup/svd.hpp"

namespace rankup::testing {

using Rng = std::mt19937_64;

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (auto& e : m.data()) e = gauss(rng);
    return m;
}

// Orthonormal columns via twice-iterated modified Gram-Schmidt.
inline Matrix random_orthonormal(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix q(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<double> col(rows);
        for (auto& e : col) e = gauss(rng);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                double proj = 0.0;
                for (std::size_t i = 0; i < rows; ++i) proj += q(i, p) * col[i];
                for (std::size_t i = 0; i < rows; ++i) col[i] -= proj * q(i, p);
            }
        }
        double norm = 0.0;
        for (double e : col) norm += e * e;
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < rows; ++i) q(i, j) = col[i] / norm;
    }
    return q;
}

// A = U diag(d) V^T with exact rank and singular values in [0.5, 2].
inline Matrix random_rank_matrix(std::size_t rows, std::size_t cols,
                                 std::size_t rank, Rng& rng) {
    std::uniform_real_distribution<double> sval(0.5, 2.0);
    const Matrix u = random_orthonormal(rows, rank, rng);
    const Matrix v = random_orthonormal(cols, rank, rng);
    Matrix a(rows, cols);
    std::vector<double> d(rank);
    for (auto& e : d) e = sval(rng);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < rank; ++r) acc += u(i, r) * d[r] * v(j, r);
            a(i, j) = acc;
        }
    return a;
}

inline Matrix random_symmetric_rank_matrix(std::size_t n, std::size_t rank,
                                           Rng& rng) {
    std::uniform_real_distribution<double> sval(0.5, 2.0);
    const Matrix u = random_orthonormal(n, rank, rng);
    Matrix a(n, n);
    std::vector<double> d(rank);
    for (auto& e : d) e = sval(rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < rank; ++r) acc += u(i, r) * d[r] * u(j, r);
            a(i, j) = acc;
        }
    return a;
}

inline Matrix random_nonsingular(std::size_t n, Rng& rng) {
    Matrix g = random_matrix(n, n, rng);
    for (std::size_t j = 0; j < n; ++j) g(j, j) += 3.0;
    return g;
}

// Random validated update problem: A of the given rank, random dense
// X_i decomposed against M(A) / M(A^T). With rank(A) <= ell - k the
// orthogonal parts are full rank almost surely.
inline UpdateProblem random_update_problem(std::size_t ell, std::size_t k,
                                           std::size_t rank, Rng& rng,
                                           const ToleranceConfig& tol = {},
                                           const Matrix* g_fixed = nullptr) {
    const Matrix a = random_rank_matrix(ell, ell, rank, rng);
    const Matrix x1 = random_matrix(ell, k, rng);
    const Matrix x2 = random_matrix(ell, k, rng);
    const DecomposedPerturbation p1 = decompose(x1, a, Side::column_space, tol);
    const DecomposedPerturbation p2 = decompose(x2, a, Side::row_space, tol);
    const Matrix g = g_fixed ? *g_fixed : random_nonsingular(k, rng);
    return validate_hypotheses(p1, p2, g, a, tol);
}

inline double rel_err(const Matrix& got, const Matrix& want) {
    return frob_norm(sub(got, want)) / (1.0 + frob_norm(want));
}

}  // namespace rankup::testing
