#include "rankup/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace rankup {

namespace {

void check_finite(const std::vector<double>& entries) {
    for (double e : entries) {
        if (!std::isfinite(e)) {
            throw Error("matrix entry is not finite");
        }
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
    }
    check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw ShapeError("ragged initializer rows");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::column(const std::vector<double>& entries) {
    return Matrix(entries.size(), 1, entries);
}

std::string shape_string(const Matrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul shape mismatch: " + shape_string(a) + " * " +
                         shape_string(b));
    }
    Matrix out(a.rows(), b.cols());
    const std::size_t n = a.rows(), m = b.cols(), inner = a.cols();
    // i-k-j order keeps the inner loops streaming over contiguous rows.
    for (std::size_t i = 0; i < n; ++i) {
        double* out_row = &out.data()[i * m];
        for (std::size_t k = 0; k < inner; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* b_row = &b.data()[k * m];
            for (std::size_t j = 0; j < m; ++j) {
                out_row[j] += aik * b_row[j];
            }
        }
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw ShapeError("add shape mismatch: " + shape_string(a) + " vs " +
                         shape_string(b));
    }
    Matrix out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw ShapeError("sub shape mismatch: " + shape_string(a) + " vs " +
                         shape_string(b));
    }
    Matrix out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

Matrix scale(const Matrix& a, double s) {
    Matrix out = a;
    for (double& e : out.data()) e *= s;
    return out;
}

double frob_norm(const Matrix& a) {
    double acc = 0.0;
    for (double e : a.data()) acc += e * e;
    return std::sqrt(acc);
}

double dot(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw ShapeError("dot shape mismatch: " + shape_string(a) + " vs " +
                         shape_string(b));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) acc += a.data()[i] * b.data()[i];
    return acc;
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
    if (a.rows() != a.cols()) {
        throw ShapeError("solve needs a square matrix, got " + shape_string(a));
    }
    if (a.rows() != rhs.rows()) {
        throw ShapeError("solve rhs mismatch: " + shape_string(a) + " vs " +
                         shape_string(rhs));
    }
    const std::size_t n = a.rows(), m = rhs.cols();
    Matrix lu = a;
    Matrix x = rhs;
    double scale = 0.0;
    for (double e : a.data()) scale = std::max(scale, std::fabs(e));

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(lu(r, col)) > std::fabs(lu(piv, col))) piv = r;
        }
        if (std::fabs(lu(piv, col)) <= 1e-13 * (scale > 0 ? scale : 1.0)) {
            throw SingularUpdateError("matrix numerically singular at pivot " +
                                      std::to_string(col));
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(x(col, j), x(piv, j));
        }
        const double inv_piv = 1.0 / lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = lu(r, col) * inv_piv;
            if (f == 0.0) continue;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
            for (std::size_t j = 0; j < m; ++j) x(r, j) -= f * x(col, j);
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        const double inv_piv = 1.0 / lu(col, col);
        for (std::size_t j = 0; j < m; ++j) {
            double acc = x(col, j);
            for (std::size_t r = col + 1; r < n; ++r) acc -= lu(col, r) * x(r, j);
            x(col, j) = acc * inv_piv;
        }
    }
    return x;
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

Matrix read_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) {
        throw ParseError("matrix header: expected '<rows> <cols>' on line 1");
    }
    if (rows == 0 || cols == 0) {
        throw ParseError("matrix header: dimensions must be positive");
    }
    std::vector<double> entries(rows * cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!(in >> entries[i])) {
            throw ParseError("matrix body: expected " +
                             std::to_string(rows * cols) + " entries, got " +
                             std::to_string(i));
        }
    }
    return Matrix(rows, cols, std::move(entries));
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return read_matrix(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_matrix(std::ostream& out, const Matrix& a) {
    out << a.rows() << " " << a.cols() << "\n";
    char buf[32];
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
            out << (j ? " " : "") << buf;
        }
        out << "\n";
    }
}

void write_matrix_file(const std::string& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_matrix(out, a);
}

}  // namespace rankup
