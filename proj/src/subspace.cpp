#include "rankup/subspace.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rankup {

Matrix UpdateProblem::omega() const {
    const Matrix x1 = add(v1, w1);
    const Matrix x2 = add(v2, w2);
    return add(a, matmul(matmul(x1, g), transpose(x2)));
}

UpdateProblem UpdateProblem::unchecked(Matrix a, Matrix v1, Matrix w1,
                                       Matrix c1, Matrix v2, Matrix w2,
                                       Matrix c2, Matrix g,
                                       const ToleranceConfig& tol) {
    UpdateProblem p;
    p.k = g.rows();
    p.ell = a.rows();
    p.a_pinv = oracle_pinv(a, tol);
    p.a = std::move(a);
    p.v1 = std::move(v1);
    p.w1 = std::move(w1);
    p.c1 = std::move(c1);
    p.v2 = std::move(v2);
    p.w2 = std::move(w2);
    p.c2 = std::move(c2);
    p.g = std::move(g);
    return p;
}

Matrix column_space_projector(const Matrix& a, const ToleranceConfig& tol) {
    const SvdFactors f = svd(a, tol);
    return matmul(f.u, transpose(f.u));
}

DecomposedPerturbation decompose(const Matrix& x, const Matrix& a, Side side,
                                 const ToleranceConfig& tol) {
    const std::size_t expected = side == Side::column_space ? a.rows() : a.cols();
    if (x.rows() != expected) {
        throw ShapeError("decompose: x has " + std::to_string(x.rows()) +
                         " rows, reference space needs " +
                         std::to_string(expected));
    }
    const SvdFactors f = svd(a, tol);
    const Matrix& basis = side == Side::column_space ? f.u : f.v;

    // v = basis (basis^T x); then recompute v against w so that v + w
    // returns x as the same floating-point sum.
    Matrix proj = matmul(basis, matmul(transpose(basis), x));
    DecomposedPerturbation d;
    d.w = sub(x, proj);
    d.v = x;
    for (std::size_t i = 0; i < x.data().size(); ++i)
        d.v.data()[i] = exact_complement(x.data()[i], d.w.data()[i]);

    d.b = matmul(transpose(d.w), d.w);
    const std::size_t k = x.cols();

    // b is symmetric PSD, so its singular values are its eigenvalues.
    const SvdFactors bf = svd(d.b, tol);
    const double b_max = bf.sigma.empty() ? 0.0 : bf.sigma.front();
    const double b_min =
        bf.numerical_rank == k ? bf.sigma.back() : 0.0;
    d.b_rank_full =
        bf.numerical_rank == k &&
        b_min > tol.rank_rel_tol * static_cast<double>(k) * b_max;
    if (d.b_rank_full) {
        // C = W B^{-1} via solve rather than forming B^{-1}.
        d.c = transpose(solve(d.b, transpose(d.w)));
    }
    return d;
}

UpdateProblem validate_hypotheses(const DecomposedPerturbation& p1,
                                  const DecomposedPerturbation& p2,
                                  const Matrix& g, const Matrix& a,
                                  const ToleranceConfig& tol) {
    const std::size_t k = p1.v.cols();
    const std::size_t ell = a.rows();
    if (a.rows() != a.cols()) {
        throw ShapeError("update problem needs square A, got " + shape_string(a));
    }
    if (p2.v.cols() != k || g.rows() != k || g.cols() != k) {
        throw ShapeError("perturbation width mismatch: k=" + std::to_string(k) +
                         ", other side " + std::to_string(p2.v.cols()) +
                         ", G " + shape_string(g));
    }
    if (k > ell) {
        throw ShapeError("perturbation rank k=" + std::to_string(k) +
                         " exceeds matrix size " + std::to_string(ell));
    }
    if (!p1.b_rank_full) {
        throw HypothesisError("B_1 = W_1^T W_1 is rank deficient");
    }
    if (!p2.b_rank_full) {
        throw HypothesisError("B_2 = W_2^T W_2 is rank deficient");
    }
    if (numerical_rank(g, tol) != k) {
        throw HypothesisError("G is singular");
    }
    return UpdateProblem::unchecked(a, p1.v, p1.w, p1.c, p2.v, p2.w, p2.c, g,
                                    tol);
}

}  // namespace rankup
