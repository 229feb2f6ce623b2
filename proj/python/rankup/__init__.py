"""Low-rank inverse and pseudoinverse updates for singular matrices."""

from rankup._core import (
    ConvergenceError,
    HypothesisError,
    PenroseReport,
    PreconditionError,
    ShapeError,
    SingularUpdateError,
    decompose,
    fit_ols,
    numerical_rank,
    penrose_check,
    pinv,
    ssp_pinv,
    svd,
    update_pinv,
)

__all__ = [
    "ConvergenceError",
    "HypothesisError",
    "PenroseReport",
    "PreconditionError",
    "ShapeError",
    "SingularUpdateError",
    "decompose",
    "fit_ols",
    "numerical_rank",
    "penrose_check",
    "pinv",
    "ssp_pinv",
    "svd",
    "update_pinv",
]
