r"""Generalized differential transform method (GDTM).

The solution is sought as a pure fractional power series about a base point
:math:`t_b`,

.. math::

    y(t) = \sum_{k \ge 0} Y(k) (t - t_b)^{k\alpha},

with :math:`Y(0) = y(t_b)` and

.. math::

    Y(k + 1) = \frac{\Gamma(\alpha k + 1)}{\Gamma(\alpha (k + 1) + 1)} F(k),

where :math:`F` is the differential transform of the right-hand side. For a
polynomial right-hand side the transform of :math:`y^d` is the ``d``-fold
Cauchy self-product of the coefficient sequence and the transform of a
constant ``c`` is ``c`` at ``k = 0`` and zero afterwards.

Note that the series contains no integer powers of :math:`t - t_b` unless
``alpha`` is rational, so it cannot represent the mixed-power expansion of a
true fractional solution. This is kept on purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from fracivp.problem import DomainError, FractionalIVP, PolynomialRHS, SolverOverflowError
from fracivp.specialfn import gamma

__all__ = [
    "TransformSeries",
    "cauchy_power",
    "poly_transform",
    "gdtm_coefficients",
    "eval_series",
]


@dataclass(frozen=True)
class TransformSeries:
    """Coefficients ``Y(0..N)`` of a fractional power series anchored at ``base``."""

    alpha: float
    base: float
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least Y(0)")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("series coefficients must be finite")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha out of (0,1]: {self.alpha!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        return eval_series(self, t)


def cauchy_power(Y: Sequence[float], d: int, k: int) -> float:
    """Index ``k`` of the ``d``-fold Cauchy product ``Y * Y * ... * Y``.

    ``d = 0`` gives the transform of the constant one, i.e. ``delta(k)``.
    """
    Y = np.asarray(Y, dtype=float)
    if Y.size < k + 1:
        raise ValueError(f"need at least {k + 1} coefficients, got {Y.size}")
    if d == 0:
        return 1.0 if k == 0 else 0.0
    prefix = Y[: k + 1]
    power = prefix.copy()
    for _ in range(d - 1):
        power = np.convolve(power, prefix)[: k + 1]
    return float(power[k])


def poly_transform(rhs: PolynomialRHS, Y: Sequence[float], k: int) -> float:
    """Differential transform ``F(k)`` of ``f(y) = sum_d c_d y^d``.

    Only ``Y(0..k)`` is read.
    """
    return float(sum(c * cauchy_power(Y, d, k) for d, c in enumerate(rhs.coeffs) if c != 0.0))


def gdtm_coefficients(
    ivp: FractionalIVP,
    N: int,
    base: float | None = None,
    y_base: float | None = None,
) -> TransformSeries:
    """Run the Gamma-ratio recurrence up to ``Y(N)``.

    ``base`` and ``y_base`` default to ``ivp.t0`` and ``ivp.y0``. The Caputo
    derivative is taken as anchored at ``base``, which is what the multi-step
    variant relies on when it restarts.
    """
    if int(N) != N or N < 1:
        raise ValueError(f"series order N must be a positive integer, got {N!r}")
    N = int(N)
    base = ivp.t0 if base is None else float(base)
    y_base = ivp.y0 if y_base is None else float(y_base)
    if not math.isfinite(y_base):
        raise ValueError("y_base must be finite")

    alpha = ivp.alpha
    coeffs = ivp.rhs.coeffs
    Y = np.zeros(N + 1)
    Y[0] = y_base
    # powers[d - 1][i] = (Y^{*d})(i), filled one index at a time
    powers = np.zeros((max(len(coeffs) - 1, 1), N + 1))
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(N):
            powers[0, k] = Y[k]
            for d in range(1, powers.shape[0]):
                powers[d, k] = powers[d - 1, : k + 1] @ Y[k::-1]
            F = coeffs[0] if k == 0 else 0.0
            for d in range(1, len(coeffs)):
                F += coeffs[d] * powers[d - 1, k]
            Y[k + 1] = gamma(alpha * k + 1.0) / gamma(alpha * (k + 1) + 1.0) * F
            if not math.isfinite(Y[k + 1]):
                raise SolverOverflowError(f"GDTM coefficient Y({k + 1}) is not finite", index=k + 1)
    return TransformSeries(alpha=alpha, base=base, coeffs=tuple(Y))


def eval_series(series: TransformSeries, t):
    """Sum ``Y(k) (t - base)**(k alpha)``; ``t`` may be a scalar or an array.

    Raises :class:`~fracivp.problem.DomainError` if any ``t < base``.
    """
    t_arr = np.asarray(t, dtype=float)
    dt = t_arr - series.base
    if np.any(dt < 0.0):
        raise DomainError(f"series anchored at {series.base!r} cannot be evaluated before its base")
    Y = np.asarray(series.coeffs)
    k = np.arange(1, Y.size)
    # t == base short-circuits to Y(0), avoiding 0**0
    with np.errstate(divide="ignore"):
        log_dt = np.log(dt)
    pos = dt > 0.0
    powers = np.exp(np.multiply.outer(np.where(pos, log_dt, 0.0), k * series.alpha))
    out = Y[0] + np.where(pos, powers @ Y[1:], 0.0)
    return float(out) if out.ndim == 0 else out
