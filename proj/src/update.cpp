#include "rankup/update.hpp"

#include <cmath>
#include <string>

namespace rankup {

namespace {

Matrix as_column(const std::vector<double>& v) { return Matrix::column(v); }

double vec_norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return acc;
}

}  // namespace

Matrix woodbury_inverse(const Matrix& a, const Matrix& x1, const Matrix& g,
                        const Matrix& x2, const ToleranceConfig& tol) {
    const std::size_t ell = a.rows();
    const std::size_t k = g.rows();
    if (a.rows() != a.cols() || g.rows() != g.cols()) {
        throw ShapeError("woodbury needs square A and G");
    }
    if (x1.rows() != ell || x2.rows() != ell || x1.cols() != k ||
        x2.cols() != k) {
        throw ShapeError("woodbury perturbation shapes: X1 " + shape_string(x1) +
                         ", X2 " + shape_string(x2) + " vs A " +
                         shape_string(a) + ", G " + shape_string(g));
    }
    if (numerical_rank(a, tol) != ell) {
        throw PreconditionError(
            "A is numerically singular; use the rank-augmenting pseudoinverse");
    }
    if (numerical_rank(g, tol) != k) {
        throw PreconditionError("G is numerically singular");
    }
    const Matrix a_inv = inverse(a);
    const Matrix ai_x1 = matmul(a_inv, x1);
    const Matrix x2t_ai = matmul(transpose(x2), a_inv);
    const Matrix capacitance = add(inverse(g), matmul(x2t_ai, x1));
    Matrix core;
    try {
        core = solve(capacitance, x2t_ai);
    } catch (const SingularUpdateError&) {
        throw SingularUpdateError(
            "capacitance matrix G^{-1} + X2^T A^{-1} X1 is singular: the "
            "updated matrix has no inverse");
    }
    return sub(a_inv, matmul(ai_x1, core));
}

Matrix rank_augmenting_apply(const Matrix& a_pinv, const Matrix& v1,
                             const Matrix& c1, const Matrix& v2,
                             const Matrix& c2, const Matrix& g) {
    const Matrix c1t = transpose(c1);
    const Matrix v2t_ap = matmul(transpose(v2), a_pinv);
    const Matrix ap_v1 = matmul(a_pinv, v1);
    const Matrix mid = add(inverse(g), matmul(transpose(v2), ap_v1));
    Matrix out = sub(a_pinv, matmul(c2, v2t_ap));
    out = sub(out, matmul(ap_v1, c1t));
    return add(out, matmul(c2, matmul(mid, c1t)));
}

Matrix rank_augmenting_pinv(const UpdateProblem& p, const ToleranceConfig&) {
    return rank_augmenting_apply(p.a_pinv, p.v1, p.c1, p.v2, p.c2, p.g);
}

Matrix orthogonal_only_pinv(const Matrix& a_pinv, const Matrix& c1,
                            const Matrix& c2, const Matrix& g) {
    if (c1.cols() != g.cols() || c2.cols() != g.rows()) {
        throw ShapeError("orthogonal update shapes: C1 " + shape_string(c1) +
                         ", C2 " + shape_string(c2) + ", G " + shape_string(g));
    }
    return add(a_pinv, matmul(c2, matmul(inverse(g), transpose(c1))));
}

Matrix symmetric_pinv(const Matrix& a, const Matrix& v, const Matrix& w,
                      const Matrix& g, const ToleranceConfig& tol) {
    if (a.rows() != a.cols()) {
        throw PreconditionError("symmetric update needs square A");
    }
    const double asym = frob_norm(sub(a, transpose(a)));
    if (asym > 1e-12 * frob_norm(a)) {
        throw PreconditionError("A is not symmetric (asymmetry " +
                                std::to_string(asym) + ")");
    }
    const std::size_t k = g.rows();
    const Matrix b = matmul(transpose(w), w);
    const SvdFactors bf = svd(b, tol);
    const bool b_full =
        bf.numerical_rank == k &&
        bf.sigma.back() >
            tol.rank_rel_tol * static_cast<double>(k) * bf.sigma.front();
    if (!b_full) {
        throw HypothesisError("B = W^T W is rank deficient");
    }
    if (numerical_rank(g, tol) != k) {
        throw HypothesisError("G is singular");
    }
    const Matrix c = transpose(solve(b, transpose(w)));
    const Matrix a_pinv = oracle_pinv(a, tol);
    return rank_augmenting_apply(a_pinv, v, c, v, c, g);
}

Matrix bartlett_inverse(const Matrix& a, const std::vector<double>& v1,
                        const std::vector<double>& v2,
                        const ToleranceConfig& tol) {
    const std::size_t ell = a.rows();
    if (a.rows() != a.cols() || v1.size() != ell || v2.size() != ell) {
        throw ShapeError("bartlett shapes: A " + shape_string(a) +
                         ", vectors " + std::to_string(v1.size()) + "/" +
                         std::to_string(v2.size()));
    }
    if (numerical_rank(a, tol) != ell) {
        throw PreconditionError(
            "A is numerically singular; use the rank-one pseudoinverse");
    }
    const Matrix a_inv = inverse(a);
    const Matrix ai_v1 = matmul(a_inv, as_column(v1));
    const Matrix v2t_ai = matmul(transpose(as_column(v2)), a_inv);
    const double denom = 1.0 + matmul(v2t_ai, as_column(v1))(0, 0);
    if (std::fabs(denom) <= tol.rank_rel_tol * (1.0 + frob_norm(ai_v1))) {
        throw SingularUpdateError(
            "1 + v2^T A^{-1} v1 vanishes: updated matrix is singular");
    }
    return sub(a_inv, scale(matmul(ai_v1, v2t_ai), 1.0 / denom));
}

Matrix rank_one_pinv(const Matrix& a, const std::vector<double>& v1,
                     const std::vector<double>& w1,
                     const std::vector<double>& v2,
                     const std::vector<double>& w2,
                     const ToleranceConfig& tol, bool* parallel_ok) {
    const std::size_t ell = a.rows();
    if (a.rows() != a.cols() || v1.size() != ell || w1.size() != ell ||
        v2.size() != ell || w2.size() != ell) {
        throw ShapeError("rank-one update needs square A and length-" +
                         std::to_string(ell) + " vectors");
    }
    const double w1sq = vec_norm2(w1);
    const double w2sq = vec_norm2(w2);
    const double a_scale = 1.0 + frob_norm(a);
    const double floor = tol.rank_rel_tol * a_scale;
    if (std::sqrt(w1sq) <= floor || std::sqrt(w2sq) <= floor) {
        throw HypothesisError(
            "w component is numerically zero; the pseudoinverse grows like "
            "1/(|w1||w2|)");
    }
    if (parallel_ok) {
        double cross = 0.0;
        for (std::size_t i = 0; i < ell; ++i) cross += w1[i] * w2[i];
        *parallel_ok =
            std::fabs(std::fabs(cross) - std::sqrt(w1sq * w2sq)) <=
            tol.subspace_tol * std::sqrt(w1sq * w2sq);
    }

    const Matrix a_pinv = oracle_pinv(a, tol);
    const Matrix v1c = as_column(v1), w1c = as_column(w1);
    const Matrix v2c = as_column(v2), w2c = as_column(w2);
    const Matrix v2t_ap = matmul(transpose(v2c), a_pinv);  // 1 x ell
    const Matrix ap_v1 = matmul(a_pinv, v1c);              // ell x 1
    const double coeff = 1.0 + matmul(v2t_ap, v1c)(0, 0);

    Matrix out = sub(a_pinv, scale(matmul(w2c, v2t_ap), 1.0 / w2sq));
    out = sub(out, scale(matmul(ap_v1, transpose(w1c)), 1.0 / w1sq));
    return add(out,
               scale(matmul(w2c, transpose(w1c)), coeff / (w1sq * w2sq)));
}

Matrix left_projector(const UpdateProblem& p) {
    return add(matmul(p.a, p.a_pinv), matmul(p.w1, transpose(p.c1)));
}

Matrix right_projector(const UpdateProblem& p) {
    return add(matmul(p.a_pinv, p.a), matmul(p.c2, transpose(p.w2)));
}

Matrix row_space_projector(const Matrix& a, const std::vector<double>& w,
                           const ToleranceConfig& tol) {
    if (a.rows() != a.cols() || w.size() != a.cols()) {
        throw ShapeError("row space projector needs square A and length-" +
                         std::to_string(a.cols()) + " w");
    }
    const double wsq = vec_norm2(w);
    if (std::sqrt(wsq) <= tol.rank_rel_tol * (1.0 + frob_norm(a))) {
        throw HypothesisError("w is numerically zero");
    }
    const Matrix a_pinv = oracle_pinv(a, tol);
    const Matrix wc = Matrix::column(w);
    return add(matmul(a_pinv, a),
               scale(matmul(wc, transpose(wc)), 1.0 / wsq));
}

PenroseReport penrose_check(const Matrix& omega, const Matrix& candidate,
                            const ToleranceConfig& tol) {
    if (candidate.rows() != omega.cols() || candidate.cols() != omega.rows()) {
        throw ShapeError("penrose check: candidate " + shape_string(candidate) +
                         " does not conform with " + shape_string(omega));
    }
    const Matrix oc = matmul(omega, candidate);
    const Matrix co = matmul(candidate, omega);
    PenroseReport r;
    r.res_a = frob_norm(sub(matmul(oc, omega), omega));
    r.res_b = frob_norm(sub(matmul(co, candidate), candidate));
    r.res_c = frob_norm(sub(transpose(oc), oc));
    r.res_d = frob_norm(sub(transpose(co), co));
    r.tol_used = tol.penrose_tol;
    const double bound = tol.penrose_tol * (1.0 + frob_norm(omega)) *
                         (1.0 + frob_norm(candidate));
    r.passed = r.res_a <= bound && r.res_b <= bound && r.res_c <= bound &&
               r.res_d <= bound;
    return r;
}

RemarkReport remark_conditions_check(const UpdateProblem& p,
                                     const ToleranceConfig& tol) {
    const Matrix g_pinv = oracle_pinv(p.g, tol);
    const Matrix c1t = transpose(p.c1);
    const Matrix g_w2t_c2 = matmul(p.g, matmul(transpose(p.w2), p.c2));

    const Matrix lhs1 = matmul(g_w2t_c2, matmul(g_pinv, c1t));
    const Matrix lhs2 = matmul(g_w2t_c2, transpose(p.v2));
    const Matrix rhs2 = matmul(p.g, transpose(p.v2));
    const Matrix c2_gp_c1t = matmul(p.c2, matmul(g_pinv, c1t));
    const Matrix lhs3 = matmul(c2_gp_c1t, matmul(p.w1, p.g));
    const Matrix lhs4 = matmul(p.v1, matmul(c1t, matmul(p.w1, p.g)));
    const Matrix rhs4 = matmul(p.v1, p.g);

    RemarkReport r;
    r.res1 = frob_norm(sub(lhs1, c1t));
    r.res2 = frob_norm(sub(lhs2, rhs2));
    r.res3 = frob_norm(sub(lhs3, p.c2));
    r.res4 = frob_norm(sub(lhs4, rhs4));
    const double t = tol.penrose_tol;
    r.passed = r.res1 <= t * (1.0 + frob_norm(c1t)) &&
               r.res2 <= t * (1.0 + frob_norm(rhs2)) &&
               r.res3 <= t * (1.0 + frob_norm(p.c2)) &&
               r.res4 <= t * (1.0 + frob_norm(rhs4));
    return r;
}

}  // namespace rankup
