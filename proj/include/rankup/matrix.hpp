#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <iosfwd>
#include <string>
#include <vector>

#include "rankup/errors.hpp"

namespace rankup {

// Dense real matrix, row-major, immutable by convention: every operation
// returns a fresh value. Entries are checked finite when constructed from
// user-supplied data.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix column(const std::vector<double>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::string shape_string(const Matrix& a);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
double frob_norm(const Matrix& a);
double dot(const Matrix& a, const Matrix& b);  // entrywise, same shape

// Returns v near x - w with v + w == x as the same floating-point sum,
// stepping away the last-ulp rounding of the subtraction. Falls back to
// the closest achievable v when no representable one sums back to x.
inline double exact_complement(double x, double w) {
    double v = x - w;
    double best = v;
    double best_gap = std::fabs((v + w) - x);
    for (int i = 0; i < 8 && best_gap != 0.0; ++i) {
        const double s = v + w;
        v = std::nextafter(v, s < x ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity());
        const double gap = std::fabs((v + w) - x);
        if (gap < best_gap) {
            best = v;
            best_gap = gap;
        }
    }
    return best;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }
inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }

// Gaussian elimination with partial pivoting; a must be square.
// Throws SingularUpdateError when a pivot collapses.
Matrix solve(const Matrix& a, const Matrix& rhs);
Matrix inverse(const Matrix& a);

// Plain-text matrix format: line 1 = "<rows> <cols>", then row-major
// entries, whitespace separated. Writers emit 17 significant digits so a
// write -> read round-trip is bit exact.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& a);
void write_matrix_file(const std::string& path, const Matrix& a);

}  // namespace rankup
