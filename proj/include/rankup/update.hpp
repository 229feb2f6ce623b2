#pragma once

#include "rankup/matrix.hpp"
#include "rankup/subspace.hpp"
#include "rankup/svd.hpp"

namespace rankup {

// Frobenius residuals of the four Penrose conditions for a candidate
// generalized inverse.
struct PenroseReport {
    double res_a = 0.0;  // Omega C Omega = Omega
    double res_b = 0.0;  // C Omega C = C
    double res_c = 0.0;  // (Omega C)^T = Omega C
    double res_d = 0.0;  // (C Omega)^T = C Omega
    bool passed = false;
    double tol_used = 0.0;
};

struct RemarkReport {
    double res1 = 0.0;  // G W2^T C2 G+ C1^T = C1^T
    double res2 = 0.0;  // G W2^T C2 V2^T = G V2^T
    double res3 = 0.0;  // C2 G+ C1^T W1 G = C2
    double res4 = 0.0;  // V1 C1^T W1 G = V1 G
    bool passed = false;
};

// Classic update of a nonsingular inverse:
// (A + X1 G X2^T)^{-1} = A^{-1} - A^{-1} X1 (G^{-1} + X2^T A^{-1} X1)^{-1} X2^T A^{-1}.
Matrix woodbury_inverse(const Matrix& a, const Matrix& x1, const Matrix& g,
                        const Matrix& x2, const ToleranceConfig& tol = {});

// Pseudoinverse of A + (V1+W1) G (V2+W2)^T for singular A:
// Omega+ = A+ - C2 V2^T A+ - A+ V1 C1^T + C2 (G^{-1} + V2^T A+ V1) C1^T.
Matrix rank_augmenting_pinv(const UpdateProblem& p,
                            const ToleranceConfig& tol = {});

// Same formula on pre-decomposed pieces with A+ already in hand; this is
// the hot path the update exists for (no factorization inside).
Matrix rank_augmenting_apply(const Matrix& a_pinv, const Matrix& v1,
                             const Matrix& c1, const Matrix& v2,
                             const Matrix& c2, const Matrix& g);

// V = 0 case: Omega+ = A+ + C2 G^{-1} C1^T.
Matrix orthogonal_only_pinv(const Matrix& a_pinv, const Matrix& c1,
                            const Matrix& c2, const Matrix& g);

// Symmetric A and Omega, single V/W/C:
// Omega+ = A+ - C V^T A+ - A+ V C^T + C (G^{-1} + V^T A+ V) C^T.
Matrix symmetric_pinv(const Matrix& a, const Matrix& v, const Matrix& w,
                      const Matrix& g, const ToleranceConfig& tol = {});

// Rank-one update of a nonsingular inverse (k = 1 specialization of the
// Woodbury identity).
Matrix bartlett_inverse(const Matrix& a, const std::vector<double>& v1,
                        const std::vector<double>& v2,
                        const ToleranceConfig& tol = {});

// Rank-one singular case:
// Omega+ = A+ - w2 v2^T A+ / |w2|^2 - A+ v1 w1^T / |w1|^2
//          + (1 + v2^T A+ v1) w2 w1^T / (|w1|^2 |w2|^2).
// w2 parallel to w1 is checked but only flagged through parallel_ok;
// the formula is evaluated either way.
Matrix rank_one_pinv(const Matrix& a, const std::vector<double>& v1,
                     const std::vector<double>& w1,
                     const std::vector<double>& v2,
                     const std::vector<double>& w2,
                     const ToleranceConfig& tol = {},
                     bool* parallel_ok = nullptr);

// Omega Omega+ = A A+ + W1 C1^T.
Matrix left_projector(const UpdateProblem& p);

// Omega+ Omega = A+ A + C2 W2^T.
Matrix right_projector(const UpdateProblem& p);

// Projector onto the row space of the rank-one-updated matrix:
// A+ A + w w^T / |w|^2.
Matrix row_space_projector(const Matrix& a, const std::vector<double>& w,
                           const ToleranceConfig& tol = {});

PenroseReport penrose_check(const Matrix& omega, const Matrix& candidate,
                            const ToleranceConfig& tol = {});

// The weaker conditions that can replace the rank-k requirements on
// B_i and G; evaluated with G+ from the SVD oracle so degenerate G can
// be probed.
RemarkReport remark_conditions_check(const UpdateProblem& p,
                                     const ToleranceConfig& tol = {});

}  // namespace rankup
