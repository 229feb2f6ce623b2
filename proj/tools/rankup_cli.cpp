#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rankup/matrix.hpp"
#include "rankup/regress.hpp"
#include "rankup/subspace.hpp"
#include "rankup/svd.hpp"
#include "rankup/update.hpp"

using json = nlohmann::json;
using namespace rankup;

// Exit codes: 0 pass, 1 verify failed, 2 parse error, 3 hypothesis /
// precondition violated, 4 SVD non-convergence.
namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitConvergence = 4;

struct Options {
    ToleranceConfig tol;
    std::string out_path;
    std::string format = "text";
};

void emit_matrix(const Options& opt, const Matrix& m) {
    if (opt.out_path.empty()) {
        write_matrix(std::cout, m);
    } else {
        write_matrix_file(opt.out_path, m);
    }
}

json penrose_json(const PenroseReport& r) {
    return json{{"res_a", r.res_a},
                {"res_b", r.res_b},
                {"res_c", r.res_c},
                {"res_d", r.res_d},
                {"passed", r.passed}};
}

void print_penrose(const Options& opt, const PenroseReport& r) {
    if (opt.format == "jsonl") {
        std::cout << penrose_json(r).dump() << "\n";
    } else {
        std::printf("penrose residuals: res_a=%.3e res_b=%.3e res_c=%.3e "
                    "res_d=%.3e -> %s\n",
                    r.res_a, r.res_b, r.res_c, r.res_d,
                    r.passed ? "pass" : "FAIL");
    }
}

int cmd_update(const Options& opt, const std::string& a_path,
               const std::string& x1_path, const std::string& g_path,
               const std::string& x2_path) {
    const Matrix a = read_matrix_file(a_path);
    const Matrix x1 = read_matrix_file(x1_path);
    const Matrix g = read_matrix_file(g_path);
    const Matrix x2 = read_matrix_file(x2_path);

    const Matrix omega =
        add(a, matmul(matmul(x1, g), transpose(x2)));
    Matrix result;
    std::string path_name;
    if (a.rows() == a.cols() && numerical_rank(a, opt.tol) == a.rows()) {
        result = woodbury_inverse(a, x1, g, x2, opt.tol);
        path_name = "woodbury (rank-preserving)";
    } else {
        const DecomposedPerturbation p1 =
            decompose(x1, a, Side::column_space, opt.tol);
        const DecomposedPerturbation p2 =
            decompose(x2, a, Side::row_space, opt.tol);
        const UpdateProblem p = validate_hypotheses(p1, p2, g, a, opt.tol);
        result = rank_augmenting_pinv(p, opt.tol);
        path_name = "rank-augmenting";
    }
    const PenroseReport rep = penrose_check(omega, result, opt.tol);
    if (opt.format == "jsonl") {
        json row = penrose_json(rep);
        row["path"] = path_name;
        std::cout << row.dump() << "\n";
    } else {
        std::cout << "path: " << path_name << "\n";
        print_penrose(opt, rep);
    }
    emit_matrix(opt, result);
    return rep.passed ? 0 : kExitVerifyFail;
}

int cmd_verify(const Options& opt, const std::string& omega_path,
               const std::string& candidate_path) {
    const Matrix omega = read_matrix_file(omega_path);
    const Matrix candidate = read_matrix_file(candidate_path);
    const PenroseReport rep = penrose_check(omega, candidate, opt.tol);
    print_penrose(opt, rep);
    return rep.passed ? 0 : kExitVerifyFail;
}

int cmd_regress(const Options& opt, const std::string& csv_path,
                bool pinv_only) {
    const Dataset d = read_csv_file(csv_path);
    const CenteredData c = center(d);

    std::ostringstream mean;
    for (std::size_t j = 0; j < c.x_bar.size(); ++j)
        mean << (j ? " " : "") << c.x_bar[j];

    if (pinv_only || !d.y) {
        if (!pinv_only) {
            throw PreconditionError(
                "csv has no y column; rerun with --pinv-only to skip the fit");
        }
        const SspPinv sp = ssp_pinv_via_update(c, d.n, opt.tol);
        if (opt.format == "jsonl") {
            std::cout << json{{"x_bar", c.x_bar},
                              {"cov_rank", c.cov_rank},
                              {"branch", to_string(sp.branch)}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "x_bar: " << mean.str() << "\n"
                      << "cov rank: " << c.cov_rank << "\n"
                      << "branch: " << to_string(sp.branch) << "\n";
        }
        emit_matrix(opt, sp.pinv);
        return 0;
    }

    const RegressionFit fit = fit_ols(d, opt.tol);
    if (opt.format == "jsonl") {
        std::cout << json{{"x_bar", c.x_bar},
                          {"cov_rank", c.cov_rank},
                          {"branch", to_string(fit.branch)},
                          {"beta_hat", fit.beta_hat},
                          {"residual_norm", fit.residual_norm}}
                         .dump()
                  << "\n";
    } else {
        std::ostringstream beta;
        for (std::size_t j = 0; j < fit.beta_hat.size(); ++j)
            beta << (j ? " " : "") << fit.beta_hat[j];
        std::cout << "x_bar: " << mean.str() << "\n"
                  << "cov rank: " << c.cov_rank << "\n"
                  << "branch: " << to_string(fit.branch) << "\n"
                  << "beta_hat: " << beta.str() << "\n"
                  << "residual norm: " << fit.residual_norm << "\n";
    }
    if (!opt.out_path.empty()) write_matrix_file(opt.out_path, fit.ssp_pinv);
    return 0;
}

Matrix random_orthonormal(std::size_t rows, std::size_t cols,
                          std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix q(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<double> col(rows);
        for (auto& e : col) e = gauss(rng);
        // modified Gram-Schmidt against previous columns, twice
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

int cmd_bench(const Options& opt, std::size_t ell, std::size_t rank,
              std::size_t k, std::size_t trials, std::uint64_t seed) {
    if (rank >= ell || k > ell - rank || ell > 2048 || trials == 0) {
        throw HypothesisError(
            "bench needs rank < l, k <= l - rank, l <= 2048, trials >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> sval(0.5, 2.0);

    if (opt.format == "text") {
        std::cout << "# timing excludes the one-time SVD that produced the "
                     "cached A+\n";
    }

    std::vector<double> t_update, t_full;
    double max_err = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const Matrix ub = random_orthonormal(ell, rank + k, rng);
        const Matrix vb = random_orthonormal(ell, rank + k, rng);
        // A = U1 diag(d) V1^T with exact rank; A+ = V1 diag(1/d) U1^T.
        Matrix a(ell, ell), a_pinv(ell, ell);
        std::vector<double> d(rank);
        for (auto& e : d) e = sval(rng);
        for (std::size_t i = 0; i < ell; ++i)
            for (std::size_t j = 0; j < ell; ++j) {
                double acc = 0.0, acc_p = 0.0;
                for (std::size_t r = 0; r < rank; ++r) {
                    acc += ub(i, r) * d[r] * vb(j, r);
                    acc_p += vb(i, r) / d[r] * ub(j, r);
                }
                a(i, j) = acc;
                a_pinv(i, j) = acc_p;
            }
        // W_i from the spare orthonormal columns (so B_i = I and C_i = W_i),
        // V_i random inside the column/row spaces.
        Matrix w1(ell, k), w2(ell, k), v1(ell, k), v2(ell, k);
        Matrix mix1(rank, k), mix2(rank, k);
        for (auto& e : mix1.data()) e = gauss(rng);
        for (auto& e : mix2.data()) e = gauss(rng);
        for (std::size_t i = 0; i < ell; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                w1(i, j) = ub(i, rank + j);
                w2(i, j) = vb(i, rank + j);
                double acc1 = 0.0, acc2 = 0.0;
                for (std::size_t r = 0; r < rank; ++r) {
                    acc1 += ub(i, r) * mix1(r, j);
                    acc2 += vb(i, r) * mix2(r, j);
                }
                v1(i, j) = acc1;
                v2(i, j) = acc2;
            }
        Matrix g(k, k);
        for (auto& e : g.data()) e = gauss(rng);
        for (std::size_t j = 0; j < k; ++j) g(j, j) += 3.0;

        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        const Matrix via_update =
            rank_augmenting_apply(a_pinv, v1, w1, v2, w2, g);
        const auto t1 = clock::now();

        const Matrix omega =
            add(a, matmul(matmul(add(v1, w1), g), transpose(add(v2, w2))));
        const auto t2 = clock::now();
        const Matrix via_oracle = oracle_pinv(omega, opt.tol);
        const auto t3 = clock::now();

        t_update.push_back(
            std::chrono::duration<double, std::nano>(t1 - t0).count());
        t_full.push_back(
            std::chrono::duration<double, std::nano>(t3 - t2).count());
        const double err = frob_norm(sub(via_update, via_oracle)) /
                           (1.0 + frob_norm(via_oracle));
        max_err = std::max(max_err, err);
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    const double med_update = median(t_update);
    const double med_full = median(t_full);
    if (opt.format == "jsonl") {
        std::cout << json{{"l", ell},
                          {"k", k},
                          {"t_update_ns", med_update},
                          {"t_full_ns", med_full},
                          {"max_err", max_err}}
                         .dump()
                  << "\n";
    } else {
        std::printf(
            "l=%zu rank=%zu k=%zu trials=%zu\n"
            "median update: %.3e ns\nmedian full svd pinv: %.3e ns\n"
            "speedup: %.2fx\nmax relative discrepancy: %.3e\n",
            ell, rank, k, trials, med_update, med_full, med_full / med_update,
            max_err);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Low-rank inverse and pseudoinverse updates for singular matrices"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--rank-tol", opt.tol.rank_rel_tol,
                   "relative singular value cutoff for numerical rank");
    app.add_option("--penrose-tol", opt.tol.penrose_tol,
                   "tolerance for the four Penrose conditions");
    app.add_option("--subspace-tol", opt.tol.subspace_tol,
                   "tolerance for subspace membership checks");
    app.add_option("--out", opt.out_path, "write the result matrix here");
    app.add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"text", "jsonl"}));

    std::string a_path, x1_path, g_path, x2_path;
    auto* update = app.add_subcommand(
        "update", "invert A + X1 G X2^T, dispatching on the rank of A");
    update->add_option("A", a_path, "matrix file")->required();
    update->add_option("X1", x1_path, "matrix file")->required();
    update->add_option("G", g_path, "matrix file")->required();
    update->add_option("X2", x2_path, "matrix file")->required();

    std::string omega_path, candidate_path;
    auto* verify = app.add_subcommand(
        "verify", "check a candidate pseudoinverse against the four "
                  "Penrose conditions");
    verify->add_option("OMEGA", omega_path, "matrix file")->required();
    verify->add_option("CANDIDATE", candidate_path, "matrix file")->required();

    std::string csv_path;
    bool pinv_only = false;
    auto* regress = app.add_subcommand(
        "regress", "pseudo-invert the SSP matrix of a CSV dataset and fit "
                   "minimum-norm least squares");
    regress->add_option("CSV", csv_path, "dataset file")->required();
    regress->add_flag("--pinv-only", pinv_only, "skip the fit (no y needed)");

    std::size_t bench_l = 64, bench_rank = 32, bench_k = 2, bench_trials = 5;
    std::uint64_t bench_seed = 12345;
    auto* bench = app.add_subcommand(
        "bench", "time the update formula against full recomputation");
    bench->add_option("--size", bench_l, "matrix size l");
    bench->add_option("--rank", bench_rank, "rank of A");
    bench->add_option("-k,--update-rank", bench_k, "perturbation rank");
    bench->add_option("--trials", bench_trials, "number of trials");
    bench->add_option("--seed", bench_seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (update->parsed())
            return cmd_update(opt, a_path, x1_path, g_path, x2_path);
        if (verify->parsed()) return cmd_verify(opt, omega_path, candidate_path);
        if (regress->parsed()) return cmd_regress(opt, csv_path, pinv_only);
        if (bench->parsed())
            return cmd_bench(opt, bench_l, bench_rank, bench_k, bench_trials,
                             bench_seed);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const SingularUpdateError& e) {
        std::cerr << "singular update: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    }
    return 0;
}
