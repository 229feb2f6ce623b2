#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rankup/matrix.hpp"
#include "rankup/regress.hpp"
#include "rankup/subspace.hpp"
#include "rankup/svd.hpp"
#include "rankup/update.hpp"

namespace py = pybind11;
using namespace rankup;

namespace {

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw ShapeError("expected a 2-d array");
    const auto rows = static_cast<std::size_t>(arr.shape(0));
    const auto cols = static_cast<std::size_t>(arr.shape(1));
    std::vector<double> data(arr.data(), arr.data() + rows * cols);
    return Matrix(rows, cols, std::move(data));
}

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

using NpMatrix = py::array_t<double, py::array::c_style | py::array::forcecast>;

ToleranceConfig make_tol(double rank_rel_tol, double penrose_tol,
                         double subspace_tol) {
    ToleranceConfig t;
    t.rank_rel_tol = rank_rel_tol;
    t.penrose_tol = penrose_tol;
    t.subspace_tol = subspace_tol;
    return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Low-rank inverse and pseudoinverse updates for singular matrices";

    py::register_exception<ShapeError>(m, "ShapeError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<HypothesisError>(m, "HypothesisError");
    py::register_exception<PreconditionError>(m, "PreconditionError");
    py::register_exception<SingularUpdateError>(m, "SingularUpdateError");

    py::class_<PenroseReport>(m, "PenroseReport")
        .def_readonly("res_a", &PenroseReport::res_a)
        .def_readonly("res_b", &PenroseReport::res_b)
        .def_readonly("res_c", &PenroseReport::res_c)
        .def_readonly("res_d", &PenroseReport::res_d)
        .def_readonly("passed", &PenroseReport::passed)
        .def("__repr__", [](const PenroseReport& r) {
            return "PenroseReport(passed=" + std::string(r.passed ? "True" : "False") + ")";
        });

    const auto default_tol = ToleranceConfig{};

    m.def(
        "pinv",
        [](const NpMatrix& a, double rank_rel_tol) {
            ToleranceConfig t;
            t.rank_rel_tol = rank_rel_tol;
            return to_array(oracle_pinv(to_matrix(a), t));
        },
        py::arg("a"), py::arg("rank_rel_tol") = default_tol.rank_rel_tol,
        "Moore-Penrose pseudoinverse via the built-in Jacobi SVD");

    m.def(
        "svd",
        [](const NpMatrix& a, double rank_rel_tol) {
            ToleranceConfig t;
            t.rank_rel_tol = rank_rel_tol;
            const SvdFactors f = svd(to_matrix(a), t);
            return py::make_tuple(to_array(f.u), f.sigma, to_array(f.v),
                                  f.numerical_rank);
        },
        py::arg("a"), py::arg("rank_rel_tol") = default_tol.rank_rel_tol,
        "Thin SVD truncated at the numerical rank: (u, sigma, v, rank)");

    m.def(
        "numerical_rank",
        [](const NpMatrix& a, double rank_rel_tol) {
            ToleranceConfig t;
            t.rank_rel_tol = rank_rel_tol;
            return numerical_rank(to_matrix(a), t);
        },
        py::arg("a"), py::arg("rank_rel_tol") = default_tol.rank_rel_tol);

    m.def(
        "update_pinv",
        [](const NpMatrix& a, const NpMatrix& x1, const NpMatrix& g,
           const NpMatrix& x2, double rank_rel_tol, double penrose_tol,
           double subspace_tol) {
            const ToleranceConfig t =
                make_tol(rank_rel_tol, penrose_tol, subspace_tol);
            const Matrix am = to_matrix(a), x1m = to_matrix(x1),
                         gm = to_matrix(g), x2m = to_matrix(x2);
            if (am.rows() == am.cols() &&
                numerical_rank(am, t) == am.rows()) {
                return py::make_tuple(
                    to_array(woodbury_inverse(am, x1m, gm, x2m, t)),
                    std::string("woodbury"));
            }
            const DecomposedPerturbation p1 =
                decompose(x1m, am, Side::column_space, t);
            const DecomposedPerturbation p2 =
                decompose(x2m, am, Side::row_space, t);
            const UpdateProblem p = validate_hypotheses(p1, p2, gm, am, t);
            return py::make_tuple(to_array(rank_augmenting_pinv(p, t)),
                                  std::string("rank-augmenting"));
        },
        py::arg("a"), py::arg("x1"), py::arg("g"), py::arg("x2"),
        py::arg("rank_rel_tol") = default_tol.rank_rel_tol,
        py::arg("penrose_tol") = default_tol.penrose_tol,
        py::arg("subspace_tol") = default_tol.subspace_tol,
        "Pseudoinverse of A + X1 G X2^T, dispatching on the rank of A. "
        "Returns (omega_pinv, path).");

    m.def(
        "penrose_check",
        [](const NpMatrix& omega, const NpMatrix& candidate,
           double penrose_tol) {
            ToleranceConfig t;
            t.penrose_tol = penrose_tol;
            return penrose_check(to_matrix(omega), to_matrix(candidate), t);
        },
        py::arg("omega"), py::arg("candidate"),
        py::arg("penrose_tol") = default_tol.penrose_tol);

    m.def(
        "decompose",
        [](const NpMatrix& x, const NpMatrix& a, const std::string& side,
           double rank_rel_tol) {
            ToleranceConfig t;
            t.rank_rel_tol = rank_rel_tol;
            const Side s = side == "row" ? Side::row_space : Side::column_space;
            const DecomposedPerturbation d = decompose(to_matrix(x), to_matrix(a), s, t);
            return py::make_tuple(to_array(d.v), to_array(d.w), d.b_rank_full);
        },
        py::arg("x"), py::arg("a"), py::arg("side") = "column",
        py::arg("rank_rel_tol") = default_tol.rank_rel_tol,
        "Split x = v + w against M(A) or M(A^T); returns (v, w, b_rank_full)");

    m.def(
        "ssp_pinv",
        [](const NpMatrix& x) {
            Dataset d;
            d.x = to_matrix(x);
            d.n = d.x.rows();
            d.ell = d.x.cols();
            const CenteredData c = center(d);
            const SspPinv sp = ssp_pinv_via_update(c, d.n, {});
            return py::make_tuple(to_array(sp.pinv), to_string(sp.branch));
        },
        py::arg("x"),
        "Pseudoinverse of X^T X assembled from the centered components; "
        "returns (pinv, branch)");

    m.def(
        "fit_ols",
        [](const NpMatrix& x, const std::vector<double>& y) {
            Dataset d;
            d.x = to_matrix(x);
            d.n = d.x.rows();
            d.ell = d.x.cols();
            d.y = y;
            const RegressionFit fit = fit_ols(d, {});
            return py::make_tuple(fit.beta_hat, fit.residual_norm,
                                  to_string(fit.branch));
        },
        py::arg("x"), py::arg("y"),
        "Minimum-norm least squares via the SSP pseudoinverse; returns "
        "(beta_hat, residual_norm, branch)");
}
