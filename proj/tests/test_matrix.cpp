#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rankup/matrix.hpp"
#include "test_support.hpp"

using namespace rankup;
using rankup::testing::Rng;

TEST_CASE("matmul hand cases") {
    const Matrix i2 = Matrix::identity(2);
    const Matrix a{{1, 2}, {3, 4}};
    CHECK(frob_norm(sub(matmul(i2, a), a)) == 0.0);

    const Matrix proj{{1, 0}, {0, 0}};
    const Matrix col{{0}, {5}};
    const Matrix annihilated = matmul(proj, col);
    CHECK(annihilated(0, 0) == 0.0);
    CHECK(annihilated(1, 0) == 0.0);

    const Matrix b{{5}, {6}};
    const Matrix ab = matmul(a, b);
    CHECK(ab(0, 0) == 17.0);
    CHECK(ab(1, 0) == 39.0);
}

TEST_CASE("matmul rejects mismatched shapes") {
    const Matrix a{{1, 2}, {3, 4}};
    const Matrix b{{1, 2, 3}};
    CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("2x2"), ShapeError);
}

TEST_CASE("transpose") {
    const Matrix a{{1, 2}, {3, 4}};
    const Matrix at = transpose(a);
    CHECK(at(0, 1) == 3.0);
    CHECK(at(1, 0) == 2.0);

    const Matrix col{{1}, {2}, {3}};
    const Matrix row = transpose(col);
    CHECK(row.rows() == 1);
    CHECK(row(0, 2) == 3.0);

    const Matrix i3 = Matrix::identity(3);
    CHECK(frob_norm(sub(transpose(i3), i3)) == 0.0);
}

TEST_CASE("frob_norm") {
    CHECK(frob_norm(Matrix::identity(2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(frob_norm(Matrix(3, 3)) == 0.0);
    CHECK(frob_norm(Matrix{{3}, {4}}) == doctest::Approx(5.0));
}

TEST_CASE("non-finite entries rejected at construction") {
    CHECK_THROWS_AS(Matrix(1, 1, {std::nan("")}), Error);
    CHECK_THROWS_AS(Matrix(1, 2, {1.0, INFINITY}), Error);
}

TEST_CASE("solve against known inverse") {
    const Matrix a{{4, 0}, {0, 2}};
    const Matrix inv = inverse(a);
    CHECK(inv(0, 0) == doctest::Approx(0.25));
    CHECK(inv(1, 1) == doctest::Approx(0.5));

    const Matrix singular{{1, 2}, {2, 4}};
    CHECK_THROWS_AS(solve(singular, Matrix::identity(2)), SingularUpdateError);
}

TEST_CASE("solve random round trip") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const Matrix a = rankup::testing::random_nonsingular(n, rng);
        const Matrix b = rankup::testing::random_matrix(n, 3, rng);
        const Matrix x = solve(a, b);
        CHECK(frob_norm(sub(matmul(a, x), b)) < 1e-10 * (1.0 + frob_norm(b)));
    }
}

TEST_CASE("matrix file format round-trips bit exactly") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix m = rankup::testing::random_matrix(1 + rng() % 6,
                                                        1 + rng() % 6, rng);
        std::stringstream ss;
        write_matrix(ss, m);
        const Matrix back = read_matrix(ss);
        REQUIRE(back.same_shape(m));
        for (std::size_t i = 0; i < m.data().size(); ++i) {
            CHECK(back.data()[i] == m.data()[i]);
        }
    }
}

TEST_CASE("matrix parse errors") {
    std::stringstream bad_header("x y\n");
    CHECK_THROWS_AS(read_matrix(bad_header), ParseError);

    std::stringstream short_body("2 2\n1 2 3\n");
    CHECK_THROWS_WITH_AS(read_matrix(short_body), doctest::Contains("got 3"),
                         ParseError);

    std::stringstream zero_dim("0 3\n");
    CHECK_THROWS_AS(read_matrix(zero_dim), ParseError);
}
