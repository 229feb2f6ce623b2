#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankup/matrix.hpp"
#include "rankup/svd.hpp"

namespace rankup {

// n observation rows of ell covariates, plus an optional response.
struct Dataset {
    Matrix x;  // n x ell
    std::optional<std::vector<double>> y;
    std::size_t n = 0;
    std::size_t ell = 0;
};

struct CenteredData {
    std::vector<double> x_bar;  // column means, length ell
    Matrix x_tilde;             // centered rows, n x ell
    Matrix cov;                 // x_tilde^T x_tilde
    std::size_t cov_rank = 0;
};

// Which identity produced the SSP pseudoinverse.
enum class SspBranch {
    no_mean,          // x_bar ~ 0: SSP = cov, plain oracle pinv
    rank_one,         // sqrt(n) x_bar leaves M(cov): rank-one singular update
    bartlett,         // mean inside M(cov), cov nonsingular: Bartlett update
    oracle_fallback,  // mean inside M(cov), cov singular: direct oracle
};

const char* to_string(SspBranch b);

struct SspPinv {
    Matrix pinv;
    SspBranch branch = SspBranch::no_mean;
};

struct RegressionFit {
    std::vector<double> beta_hat;
    Matrix ssp_pinv;
    bool used_rank_augmenting = false;
    double residual_norm = 0.0;
    SspBranch branch = SspBranch::no_mean;
};

CenteredData center(const Dataset& d);

// cov + n * x_bar x_bar^T == X^T X.
Matrix assemble_ssp(const CenteredData& c, std::size_t n);

// Pseudo-inverts the SSP matrix by splitting sqrt(n) x_bar = v + w
// against M(cov) and dispatching on where the mean lives.
SspPinv ssp_pinv_via_update(const CenteredData& c, std::size_t n,
                            const ToleranceConfig& tol = {});

// Minimum-norm least squares: beta = SSP+ X^T y.
RegressionFit fit_ols(const Dataset& d, const ToleranceConfig& tol = {});

// CSV ingestion: first row is a header; a column named "y" (case
// sensitive) is the response; all other columns are covariates in file
// order. Blank lines are ignored.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);

}  // namespace rankup
