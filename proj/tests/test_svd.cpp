#include <doctest.h>

#include <cmath>

#include "rankup/svd.hpp"
#include "rankup/update.hpp"
#include "test_support.hpp"

using namespace rankup;
using rankup::testing::Rng;

namespace {

void check_factors(const Matrix& a, const SvdFactors& f) {
    const std::size_t r = f.numerical_rank;
    REQUIRE(f.sigma.size() == r);
    for (std::size_t i = 0; i + 1 < r; ++i) {
        CHECK(f.sigma[i] >= f.sigma[i + 1]);
    }
    for (double s : f.sigma) CHECK(s > 0.0);
    if (r > 0) {
        CHECK(frob_norm(sub(matmul(transpose(f.u), f.u), Matrix::identity(r))) <
              1e-12);
        CHECK(frob_norm(sub(matmul(transpose(f.v), f.v), Matrix::identity(r))) <
              1e-12);
    }
    const double recon_tol =
        std::max(f.rank_threshold, 1e-13) *
        std::sqrt(static_cast<double>(a.rows() * a.cols()));
    CHECK(frob_norm(sub(f.reconstruct(), a)) <=
          recon_tol + 1e-12 * (1.0 + frob_norm(a)));
}

}  // namespace

TEST_CASE("svd of diagonal matrices") {
    const SvdFactors f1 = svd(Matrix{{3, 0}, {0, 0}});
    CHECK(f1.numerical_rank == 1);
    CHECK(f1.sigma[0] == doctest::Approx(3.0));
    CHECK(std::fabs(f1.u(0, 0)) == doctest::Approx(1.0));
    CHECK(std::fabs(f1.v(0, 0)) == doctest::Approx(1.0));

    Matrix d4(4, 4);
    d4(0, 0) = 5;
    d4(1, 1) = 2;
    const SvdFactors f2 = svd(d4);
    CHECK(f2.numerical_rank == 2);
    CHECK(f2.sigma[0] == doctest::Approx(5.0));
    CHECK(f2.sigma[1] == doctest::Approx(2.0));
}

TEST_CASE("svd with repeated singular values") {
    const Matrix a{{0, 1}, {1, 0}};
    const SvdFactors f = svd(a);
    CHECK(f.numerical_rank == 2);
    CHECK(f.sigma[0] == doctest::Approx(1.0));
    CHECK(f.sigma[1] == doctest::Approx(1.0));
    check_factors(a, f);
}

TEST_CASE("svd invariants on random instances") {
    Rng rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + rng() % 8;
        const std::size_t n = 1 + rng() % 8;
        Matrix a(1, 1);
        switch (trial % 3) {
            case 0:
                a = rankup::testing::random_matrix(m, n, rng);
                break;
            case 1: {
                // exact rank deficiency, possibly with repeated values
                const std::size_t r = rng() % (std::min(m, n) + 1);
                a = r == 0 ? Matrix(m, n)
                           : rankup::testing::random_rank_matrix(m, n, r, rng);
                break;
            }
            default: {
                a = rankup::testing::random_matrix(m, n, rng);
                // zero out a couple of columns
                for (std::size_t j = 0; j < n; j += 2)
                    for (std::size_t i = 0; i < m; ++i) a(i, j) = 0.0;
            }
        }
        if (frob_norm(a) == 0.0) {
            CHECK(svd(a).numerical_rank == 0);
            continue;
        }
        check_factors(a, svd(a));
    }
}

TEST_CASE("numerical rank of diagonal equals thresholded count") {
    Rng rng(5);
    const ToleranceConfig tol;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        std::uniform_real_distribution<double> mag(-16.0, 1.0);
        Matrix d(n, n);
        double dmax = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            d(j, j) = std::pow(10.0, mag(rng));
            dmax = std::max(dmax, std::fabs(d(j, j)));
        }
        const double threshold = tol.rank_rel_tol * static_cast<double>(n) * dmax;
        std::size_t expected = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(d(j, j)) > threshold) ++expected;
        CHECK(numerical_rank(d, tol) == expected);
    }
}

TEST_CASE("oracle_pinv hand cases") {
    const Matrix p1 = oracle_pinv(Matrix{{2, 0}, {0, 0}});
    CHECK(p1(0, 0) == doctest::Approx(0.5));
    CHECK(p1(1, 1) == doctest::Approx(0.0));

    const Matrix z = oracle_pinv(Matrix(3, 3));
    CHECK(frob_norm(z) == 0.0);

    // rank-1: (a a^T)+ = a a^T / |a|^4
    const Matrix ones{{1, 1}, {1, 1}};
    const Matrix p2 = oracle_pinv(ones);
    for (double e : p2.data()) CHECK(e == doctest::Approx(0.25));
    CHECK(penrose_check(ones, p2).passed);
}

TEST_CASE("oracle_pinv penrose conditions and involution on random input") {
    Rng rng(99);
    const ToleranceConfig tol;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng() % 20;
        const std::size_t n = 1 + rng() % 20;
        Matrix a = rankup::testing::random_matrix(m, n, rng);
        if (trial % 2 == 0) {
            const std::size_t r = 1 + rng() % std::min(m, n);
            a = rankup::testing::random_rank_matrix(m, n, r, rng);
        }
        const Matrix p = oracle_pinv(a, tol);
        const PenroseReport rep = penrose_check(a, p, tol);
        CHECK(rep.res_a < tol.penrose_tol * (1.0 + frob_norm(a)));
        CHECK(rep.passed);

        const Matrix back = oracle_pinv(p, tol);
        CHECK(frob_norm(sub(back, a)) < 1e-8 * (1.0 + frob_norm(a)));
    }
}
