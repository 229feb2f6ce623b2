#include "rankup/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace rankup {

namespace {

constexpr double kOffdiagTol = 1e-14;
constexpr int kSweepBudget = 30;

}  // namespace

Matrix SvdFactors::reconstruct() const {
    Matrix out(u.rows(), v.rows());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < v.rows(); ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < numerical_rank; ++r)
                acc += u(i, r) * sigma[r] * v(j, r);
            out(i, j) = acc;
        }
    return out;
}

// One-sided Jacobi: orthogonalize the columns of the work matrix by plane
// rotations applied from the right, accumulating the same rotations into V.
// Columns are kept contiguous for the inner dot products.
SvdFactors svd(const Matrix& a, const ToleranceConfig& tol) {
    if (a.empty()) throw ShapeError("svd of empty matrix");
    if (a.rows() < a.cols()) {
        SvdFactors t = svd(transpose(a), tol);
        std::swap(t.u, t.v);
        return t;
    }
    const std::size_t m = a.rows(), n = a.cols();

    // work[j] = j-th column of A; vcols[j] = j-th column of V.
    std::vector<std::vector<double>> work(n, std::vector<double>(m));
    std::vector<std::vector<double>> vcols(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) work[j][i] = a(i, j);
        vcols[j][j] = 1.0;
    }

    auto column_dot = [](const std::vector<double>& x,
                         const std::vector<double>& y) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
        return acc;
    };

    double max_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        max_sq = std::max(max_sq, column_dot(work[j], work[j]));
    // Columns this far below the largest carry no information at double
    // precision; rotating a pair of them can cycle without converging.
    const double negligible_sq = 1e-30 * max_sq;

    double worst = 0.0;
    bool converged = (n <= 1) || max_sq == 0.0;
    for (int sweep = 0; sweep < kSweepBudget && !converged; ++sweep) {
        worst = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double app = column_dot(work[p], work[p]);
                const double aqq = column_dot(work[q], work[q]);
                const double apq = column_dot(work[p], work[q]);
                const double bound = std::sqrt(app * aqq);
                if (bound == 0.0) continue;
                if (app <= negligible_sq || aqq <= negligible_sq) continue;
                worst = std::max(worst, std::fabs(apq) / bound);
                if (std::fabs(apq) <= kOffdiagTol * bound) continue;

                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double xp = work[p][i], xq = work[q][i];
                    work[p][i] = c * xp - s * xq;
                    work[q][i] = s * xp + c * xq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double xp = vcols[p][i], xq = vcols[q][i];
                    vcols[p][i] = c * xp - s * xq;
                    vcols[q][i] = s * xp + c * xq;
                }
            }
        }
        converged = worst <= kOffdiagTol;
    }
    if (!converged) {
        throw ConvergenceError(
            "jacobi svd did not converge in " + std::to_string(kSweepBudget) +
            " sweeps; off-diagonal residual " + std::to_string(worst));
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j)
        norms[j] = std::sqrt(column_dot(work[j], work[j]));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    const double sigma_max = norms[order[0]];
    const double threshold =
        tol.rank_rel_tol * static_cast<double>(std::max(m, n)) * sigma_max;
    std::size_t r = 0;
    while (r < n && norms[order[r]] > threshold) ++r;

    SvdFactors f;
    f.numerical_rank = r;
    f.rank_threshold = threshold;
    f.sigma.resize(r);
    f.u = Matrix(m, r);
    f.v = Matrix(n, r);
    for (std::size_t jj = 0; jj < r; ++jj) {
        const std::size_t j = order[jj];
        f.sigma[jj] = norms[j];
        const double inv = 1.0 / norms[j];
        for (std::size_t i = 0; i < m; ++i) f.u(i, jj) = work[j][i] * inv;
        for (std::size_t i = 0; i < n; ++i) f.v(i, jj) = vcols[j][i];
    }
    return f;
}

std::size_t numerical_rank(const Matrix& a, const ToleranceConfig& tol) {
    return svd(a, tol).numerical_rank;
}

Matrix oracle_pinv(const Matrix& a, const ToleranceConfig& tol) {
    const SvdFactors f = svd(a, tol);
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < f.numerical_rank; ++r)
                acc += f.v(i, r) * f.u(j, r) / f.sigma[r];
            out(i, j) = acc;
        }
    return out;
}

}  // namespace rankup
