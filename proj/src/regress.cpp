#include "rankup/regress.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "rankup/subspace.hpp"
#include "rankup/update.hpp"

namespace rankup {

const char* to_string(SspBranch b) {
    switch (b) {
        case SspBranch::no_mean: return "no-mean";
        case SspBranch::rank_one: return "rank-augmenting";
        case SspBranch::bartlett: return "bartlett";
        case SspBranch::oracle_fallback: return "oracle-fallback";
    }
    return "?";
}

CenteredData center(const Dataset& d) {
    const std::size_t n = d.n, ell = d.ell;
    CenteredData c;
    c.x_bar.assign(ell, 0.0);
    for (std::size_t j = 0; j < ell; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += d.x(i, j);
        c.x_bar[j] = acc / static_cast<double>(n);
    }
    c.x_tilde = Matrix(n, ell);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < ell; ++j)
            c.x_tilde(i, j) = exact_complement(d.x(i, j), c.x_bar[j]);
    c.cov = matmul(transpose(c.x_tilde), c.x_tilde);
    c.cov_rank = frob_norm(c.cov) == 0.0 ? 0 : numerical_rank(c.cov);
    return c;
}

Matrix assemble_ssp(const CenteredData& c, std::size_t n) {
    const Matrix xb = Matrix::column(c.x_bar);
    return add(c.cov,
               scale(matmul(xb, transpose(xb)), static_cast<double>(n)));
}

SspPinv ssp_pinv_via_update(const CenteredData& c, std::size_t n,
                            const ToleranceConfig& tol) {
    const std::size_t ell = c.x_bar.size();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    std::vector<double> mean_scaled(ell);
    for (std::size_t j = 0; j < ell; ++j) mean_scaled[j] = sqrt_n * c.x_bar[j];
    const Matrix ms = Matrix::column(mean_scaled);
    const double ms_norm = frob_norm(ms);

    SspPinv out;
    if (ms_norm <= tol.subspace_tol) {
        out.branch = SspBranch::no_mean;
        out.pinv = oracle_pinv(c.cov, tol);
        return out;
    }

    // Split sqrt(n) x_bar = v + w against M(cov). cov may be exactly zero
    // (single observation or all-constant design); then w is the whole
    // vector and the rank-one identity still applies with A+ = 0.
    Matrix v(ell, 1), w(ell, 1);
    if (c.cov_rank == 0) {
        w = ms;
    } else {
        const DecomposedPerturbation dp =
            decompose(ms, c.cov, Side::column_space, tol);
        v = dp.v;
        w = dp.w;
    }

    const double w_threshold = tol.subspace_tol * (1.0 + ms_norm);
    if (frob_norm(w) > w_threshold) {
        std::vector<double> vv(v.data()), ww(w.data());
        out.branch = SspBranch::rank_one;
        out.pinv = rank_one_pinv(c.cov, vv, ww, vv, ww, tol);
        return out;
    }

    // Mean inside M(cov): the rank-one theorem's hypothesis fails.
    if (c.cov_rank == ell) {
        out.branch = SspBranch::bartlett;
        out.pinv = bartlett_inverse(c.cov, mean_scaled, mean_scaled, tol);
        return out;
    }
    out.branch = SspBranch::oracle_fallback;
    out.pinv = oracle_pinv(assemble_ssp(c, n), tol);
    return out;
}

RegressionFit fit_ols(const Dataset& d, const ToleranceConfig& tol) {
    if (!d.y) {
        throw PreconditionError("dataset has no response column y");
    }
    const CenteredData c = center(d);
    const SspPinv sp = ssp_pinv_via_update(c, d.n, tol);

    const Matrix xt_y = matmul(transpose(d.x), Matrix::column(*d.y));
    const Matrix beta = matmul(sp.pinv, xt_y);

    RegressionFit fit;
    fit.beta_hat = beta.data();
    fit.ssp_pinv = sp.pinv;
    fit.branch = sp.branch;
    fit.used_rank_augmenting = sp.branch == SspBranch::rank_one;
    fit.residual_norm =
        frob_norm(sub(Matrix::column(*d.y), matmul(d.x, beta)));
    return fit;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
    }
    return fields;
}

}  // namespace

Dataset read_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            break;
        line.clear();
    }
    if (line.empty()) throw ParseError("csv: missing header row");

    const std::vector<std::string> header = split_csv_line(line);
    std::ptrdiff_t y_col = -1;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == "y") {
            if (y_col >= 0) throw ParseError("csv: duplicate y column");
            y_col = static_cast<std::ptrdiff_t>(j);
        }
    }
    const std::size_t total = header.size();
    const std::size_t ell = y_col >= 0 ? total - 1 : total;
    if (ell == 0) throw ParseError("csv: no covariate columns");

    std::vector<double> xdata;
    std::vector<double> ydata;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != total) {
            throw ParseError("csv line " + std::to_string(lineno) + ": expected " +
                             std::to_string(total) + " fields, got " +
                             std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < total; ++j) {
            double val;
            try {
                std::size_t used = 0;
                val = std::stod(fields[j], &used);
                if (used != fields[j].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("csv line " + std::to_string(lineno) +
                                 ", column " + std::to_string(j + 1) +
                                 ": cannot parse '" + fields[j] + "'");
            }
            if (static_cast<std::ptrdiff_t>(j) == y_col) {
                ydata.push_back(val);
            } else {
                xdata.push_back(val);
            }
        }
        ++n;
    }
    if (n == 0) throw ParseError("csv: no data rows");

    Dataset d;
    d.x = Matrix(n, ell, std::move(xdata));
    if (y_col >= 0) d.y = std::move(ydata);
    d.n = n;
    d.ell = ell;
    return d;
}

Dataset read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return read_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace rankup
