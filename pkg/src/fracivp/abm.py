r"""Fractional Adams-Bashforth-Moulton predictor-corrector (PECE).

The Caputo problem is solved through its Volterra form

.. math::

    y(t) = y_0 + \frac{1}{\Gamma(\alpha)} \int_{t_0}^t (t - s)^{\alpha - 1} f(s, y(s)) \,ds.

The predictor integrates the kernel exactly against a piecewise-constant
interpolant of ``f`` (product rectangle, weights :func:`b_weight`); the
corrector does the same against a piecewise-linear interpolant (product
trapezoid, weights :func:`a_weight`). Every step uses the whole history, so
the cost is quadratic in the number of steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from fracivp.problem import (
    FractionalIVP,
    SolverOverflowError,
    Trajectory,
    eval_rhs,
    make_uniform_grid,
)
from fracivp.specialfn import gamma

__all__ = [
    "AbmConfig",
    "b_weight",
    "a_weight",
    "b_weights",
    "a_weights",
    "predictor",
    "corrector_step",
    "solve_pece",
]


@dataclass(frozen=True)
class AbmConfig:
    """Uniform step ``h``, number of steps and corrector passes per step.

    ``corrector_iterations=1`` is the plain PECE scheme. Larger values re-apply
    the corrector with the latest iterate in place of the predicted value.
    """

    h: float
    n_steps: int
    corrector_iterations: int = 1

    def __post_init__(self) -> None:
        if not self.h > 0.0:
            raise ValueError(f"h must be positive, got {self.h!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps!r}")
        if int(self.corrector_iterations) != self.corrector_iterations or self.corrector_iterations < 1:
            raise ValueError("corrector_iterations must be a positive integer")
        object.__setattr__(self, "n_steps", int(self.n_steps))
        object.__setattr__(self, "corrector_iterations", int(self.corrector_iterations))

    @classmethod
    def covering(
        cls,
        ivp: FractionalIVP,
        *,
        h: float | None = None,
        n_steps: int | None = None,
        corrector_iterations: int = 1,
    ) -> AbmConfig:
        """Build a config spanning ``[ivp.t0, ivp.t_end]`` from exactly one of
        ``h`` or ``n_steps``.

        A step ``h`` must divide the horizon into a whole number of steps.
        """
        if (h is None) == (n_steps is None):
            raise ValueError("exactly one of h / n_steps must be given")
        span = ivp.t_end - ivp.t0
        if n_steps is None:
            n_steps = int(round(span / h))
            if n_steps < 1 or not _spans(h, n_steps, span):
                raise ValueError(f"h={h!r} does not divide the horizon {span!r} into whole steps")
        else:
            h = span / n_steps
        return cls(h=h, n_steps=n_steps, corrector_iterations=corrector_iterations)


def _spans(h: float, n_steps: int, span: float) -> bool:
    return abs(h * n_steps - span) <= n_steps * np.spacing(abs(span)) + 1e-12 * abs(span)


# Both helpers below take m = k - j >= 1 and return the bracketed power
# differences of the weight formulas in a cancellation-free form.


def _rect_diff(m, alpha: float):
    """``m**alpha - (m - 1)**alpha``."""
    m = np.asarray(m, dtype=float)
    with np.errstate(divide="ignore"):
        return -(m**alpha) * np.expm1(alpha * np.log1p(-1.0 / m))


def _trap_diff(m, alpha: float):
    """``(m + 1)**p + (m - 1)**p - 2 m**p`` with ``p = alpha + 1``."""
    m = np.asarray(m, dtype=float)
    p = alpha + 1.0
    with np.errstate(divide="ignore"):
        return m**p * (np.expm1(p * np.log1p(1.0 / m)) + np.expm1(p * np.log1p(-1.0 / m)))


def _trap_first(k, alpha: float):
    """``(k - 1)**p - k**alpha (k - 1 - alpha)`` with ``p = alpha + 1``."""
    k = np.asarray(k, dtype=float)
    p = alpha + 1.0
    with np.errstate(divide="ignore"):
        return k**p * (np.expm1(p * np.log1p(-1.0 / k)) + p / k)


def b_weight(j: int, k: int, alpha: float, h: float) -> float:
    """Predictor (product rectangle) weight ``b_{j,k}``, ``0 <= j <= k - 1``."""
    if k < 1 or not 0 <= j <= k - 1:
        raise IndexError(f"b_weight needs 0 <= j <= k-1 and k >= 1, got j={j}, k={k}")
    return float(h**alpha / alpha * _rect_diff(k - j, alpha))


def a_weight(j: int, k: int, alpha: float, h: float) -> float:
    """Corrector (product trapezoid) weight ``a_{j,k}``, ``0 <= j <= k``."""
    if k < 1 or not 0 <= j <= k:
        raise IndexError(f"a_weight needs 0 <= j <= k and k >= 1, got j={j}, k={k}")
    scale = h**alpha / (alpha * (alpha + 1.0))
    if j == k:
        return scale
    if j == 0:
        return float(scale * _trap_first(k, alpha))
    return float(scale * _trap_diff(k - j, alpha))


def b_weights(k: int, alpha: float, h: float) -> np.ndarray:
    """All predictor weights ``b_{0,k}, ..., b_{k-1,k}``."""
    if k < 1:
        raise IndexError("k must be >= 1")
    m = np.arange(k, 0, -1)
    return h**alpha / alpha * _rect_diff(m, alpha)


def a_weights(k: int, alpha: float, h: float) -> np.ndarray:
    """All corrector weights ``a_{0,k}, ..., a_{k,k}``."""
    if k < 1:
        raise IndexError("k must be >= 1")
    w = np.empty(k + 1)
    w[0] = _trap_first(k, alpha)
    w[1:k] = _trap_diff(np.arange(k - 1, 0, -1), alpha)
    w[k] = 1.0
    return h**alpha / (alpha * (alpha + 1.0)) * w


def _history_values(history) -> np.ndarray:
    values = history.values if isinstance(history, Trajectory) else history
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 1:
        raise ValueError("history must hold at least y_0")
    return values


def _node(ivp: FractionalIVP, config: AbmConfig, k: int) -> float:
    return ivp.t_end if k == config.n_steps else ivp.t0 + k * config.h


def predictor(history: Trajectory | Sequence[float], ivp: FractionalIVP, config: AbmConfig) -> float:
    """Predicted value ``y_k^P`` from the history ``y_0, ..., y_{k-1}``.

    ``history`` may be a :class:`~fracivp.problem.Trajectory` or a plain
    sequence of values on the uniform grid of ``config``; ``k`` is its length.
    """
    y = _history_values(history)
    k = y.size
    f = eval_rhs(ivp.rhs, None, y)
    return float(ivp.y0 + b_weights(k, ivp.alpha, config.h) @ f / gamma(ivp.alpha))


def corrector_step(
    history: Trajectory | Sequence[float],
    y_pred: float,
    ivp: FractionalIVP,
    config: AbmConfig,
) -> float:
    """Corrected value ``y_k`` given the history ``y_0..y_{k-1}`` and ``y_k^P``.

    With ``config.corrector_iterations > 1`` the corrector is re-applied, each
    time evaluating ``f`` at the previous iterate.
    """
    if not math.isfinite(y_pred):
        raise ValueError("y_pred must be finite")
    y = _history_values(history)
    k = y.size
    a = a_weights(k, ivp.alpha, config.h)
    lag = ivp.y0 + (a[:-1] @ eval_rhs(ivp.rhs, None, y)) / gamma(ivp.alpha)
    lead = a[-1] / gamma(ivp.alpha)
    t_k = _node(ivp, config, k)
    y_k = y_pred
    for _ in range(config.corrector_iterations):
        y_k = float(lag + lead * eval_rhs(ivp.rhs, t_k, y_k))
    return y_k


def solve_pece(ivp: FractionalIVP, config: AbmConfig) -> Trajectory:
    """Integrate ``ivp`` over ``config.n_steps`` uniform steps.

    Raises
    ------
    ValueError
        If ``config.h * config.n_steps`` does not match the horizon.
    SolverOverflowError
        If an iterate becomes non-finite; ``err.index`` is the step number.
    """
    n = config.n_steps
    alpha, h = ivp.alpha, config.h
    if not _spans(h, n, ivp.t_end - ivp.t0):
        raise ValueError("config.h * config.n_steps must equal t_end - t0")

    nodes = make_uniform_grid(ivp.t0, ivp.t_end, n)
    inv_gamma = 1.0 / gamma(alpha)
    # weights depend on j, k only through m = k - j (plus the k-dependent a_{0,k})
    m = np.arange(1, n + 1)
    b_by_m = h**alpha / alpha * _rect_diff(m, alpha)
    a_scale = h**alpha / (alpha * (alpha + 1.0))
    a_by_m = a_scale * _trap_diff(m, alpha)
    a_first = a_scale * _trap_first(m, alpha)

    y = np.empty(n + 1)
    f = np.empty(n + 1)
    y[0] = ivp.y0
    f[0] = eval_rhs(ivp.rhs, nodes[0], ivp.y0)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n + 1):
            y_k = ivp.y0 + inv_gamma * (b_by_m[k - 1 :: -1] @ f[:k])
            lag = a_first[k - 1] * f[0] + a_by_m[k - 2 :: -1] @ f[1:k] if k > 1 else a_first[0] * f[0]
            lag = ivp.y0 + inv_gamma * lag
            for _ in range(config.corrector_iterations):
                y_k = lag + inv_gamma * a_scale * eval_rhs(ivp.rhs, nodes[k], y_k)
            f_k = eval_rhs(ivp.rhs, nodes[k], y_k)
            if not (math.isfinite(y_k) and math.isfinite(f_k)):
                raise SolverOverflowError(f"non-finite iterate at step {k} (t={nodes[k]:g})", index=k)
            y[k] = y_k
            f[k] = f_k
    return Trajectory(nodes, y)
