#pragma once

#include "rankup/matrix.hpp"
#include "rankup/svd.hpp"

namespace rankup {

enum class Side { column_space, row_space };

// Orthogonal split X = V + W relative to a reference column (or row)
// space, together with B = W^T W and C = W B^{-1}.
struct DecomposedPerturbation {
    Matrix v;  // component inside the reference space
    Matrix w;  // component orthogonal to it
    Matrix b;  // W^T W, k x k
    Matrix c;  // W B^{-1}; empty when b is rank deficient
    bool b_rank_full = false;
};

// Validated inputs for the rank-augmenting identity:
// Omega = A + (V1 + W1) G (V2 + W2)^T. Constructed through
// validate_hypotheses (checked) or unchecked() for probing degenerate G.
struct UpdateProblem {
    Matrix a;
    Matrix v1, w1, c1;
    Matrix v2, w2, c2;
    Matrix g;
    std::size_t k = 0;
    std::size_t ell = 0;
    Matrix a_pinv;  // cached at construction

    Matrix omega() const;

    static UpdateProblem unchecked(Matrix a, Matrix v1, Matrix w1, Matrix c1,
                                   Matrix v2, Matrix w2, Matrix c2, Matrix g,
                                   const ToleranceConfig& tol = {});
};

// P = U U^T from the thin SVD; symmetric idempotent projector onto M(A).
Matrix column_space_projector(const Matrix& a, const ToleranceConfig& tol = {});

// Splits x against M(A) (column_space) or M(A^T) (row_space). C is
// obtained from a symmetric positive-definite solve with B; a B whose
// smallest eigenvalue falls below rank_rel_tol * k * largest is treated
// as rank deficient (c left empty, b_rank_full false).
DecomposedPerturbation decompose(const Matrix& x, const Matrix& a, Side side,
                                 const ToleranceConfig& tol = {});

// Checks the theorem hypotheses (both B_i full rank, G nonsingular) and
// bundles everything, caching A^+.
UpdateProblem validate_hypotheses(const DecomposedPerturbation& p1,
                                  const DecomposedPerturbation& p2,
                                  const Matrix& g, const Matrix& a,
                                  const ToleranceConfig& tol = {});

}  // namespace rankup
