"""Solvers for Caputo fractional initial value problems.

Three methods are provided for ``D^alpha y = f(y)``, ``0 < alpha <= 1``:

* :func:`solve_pece` - fractional Adams-Bashforth-Moulton predictor-corrector;
* :func:`gdtm_coefficients` - generalized differential transform series;
* :func:`solve_msgdtm` - the multi-step variant, which restarts the series on
  each sub-interval and thereby loses the fractional memory.

:mod:`fracivp.diagnostics` measures that loss.
"""

from fracivp.abm import AbmConfig, a_weight, b_weight, corrector_step, predictor, solve_pece
from fracivp.diagnostics import MemoryTermReport, derivative_jump, jump_exponent, memory_term
from fracivp.gdtm import TransformSeries, eval_series, gdtm_coefficients, poly_transform
from fracivp.msgdtm import PiecewiseSeries, sample, solve_msgdtm
from fracivp.problem import (
    RICCATI,
    DomainError,
    FractionalIVP,
    PolynomialRHS,
    SolverOverflowError,
    Trajectory,
    eval_rhs,
    make_uniform_grid,
)
from fracivp.specialfn import gamma

__version__ = "0.1.0"

__all__ = [
    "AbmConfig",
    "DomainError",
    "FractionalIVP",
    "MemoryTermReport",
    "PiecewiseSeries",
    "PolynomialRHS",
    "RICCATI",
    "SolverOverflowError",
    "Trajectory",
    "TransformSeries",
    "a_weight",
    "b_weight",
    "corrector_step",
    "derivative_jump",
    "eval_rhs",
    "eval_series",
    "gamma",
    "gdtm_coefficients",
    "jump_exponent",
    "make_uniform_grid",
    "memory_term",
    "poly_transform",
    "predictor",
    "sample",
    "solve_msgdtm",
    "solve_pece",
]
