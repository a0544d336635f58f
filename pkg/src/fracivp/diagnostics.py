r"""Measurements of what the multi-step GDTM restart throws away.

Two signatures are exposed:

* :func:`memory_term` estimates the history contribution

  .. math::

      \frac{1}{\Gamma(\alpha)} \int_{t_0}^{t_k} (t_{k+1} - s)^{\alpha - 1} f(s, y(s)) \,ds

  to :math:`y(t_{k+1})`, which the restarted problem on
  :math:`[t_k, t_{k+1}]` leaves out, together with its share of the full
  Volterra integral.
* :func:`derivative_jump` probes one-sided difference quotients at an
  interior breakpoint. For ``alpha < 1`` the right quotient grows like
  :math:`\varepsilon^{\alpha - 1}` while the left one stays bounded.

The probe scheme and its thresholds are this package's own construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from fracivp.abm import a_weights
from fracivp.gdtm import eval_series
from fracivp.msgdtm import PiecewiseSeries, sample
from fracivp.problem import DomainError, PolynomialRHS, Trajectory, eval_rhs
from fracivp.specialfn import gamma

__all__ = [
    "MemoryTermReport",
    "SlopeProbe",
    "memory_term",
    "derivative_jump",
    "jump_exponent",
]


@dataclass(frozen=True)
class MemoryTermReport:
    """Neglected history integral for the step ending at breakpoint ``k + 1``.

    ``value`` is the history part over ``[t0, t_k]``, ``local`` the part over
    ``[t_k, t_{k+1}]`` that the restart keeps, and ``relative_share`` is
    ``value / (value + local)``.
    """

    k: int
    value: float
    local: float
    relative_share: float

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "value": self.value,
            "local": self.local,
            "relative_share": self.relative_share,
        }


class SlopeProbe(NamedTuple):
    left_slope: float
    right_slope: float


def _evaluator(solution):
    if isinstance(solution, Trajectory):
        return solution, solution.nodes
    if isinstance(solution, PiecewiseSeries):
        return (lambda t: sample(solution, t)), solution.breakpoints
    raise TypeError(f"expected a Trajectory or PiecewiseSeries, got {type(solution).__name__}")


def memory_term(
    solution: Trajectory | PiecewiseSeries,
    k: int,
    alpha: float,
    rhs: PolynomialRHS,
    *,
    breakpoints: Sequence[float] | None = None,
    panels: int = 2000,
) -> MemoryTermReport:
    """Estimate the history integral dropped when restarting at ``t_k``.

    Parameters
    ----------
    solution
        Approximation of ``y`` on ``[t0, t_{k+1}]``; a trajectory is
        interpolated linearly between its nodes.
    k
        Index into ``breakpoints``; ``k = 0`` gives an empty history.
    breakpoints
        Sub-interval endpoints ``t_0 < t_1 < ...``. Defaults to the
        solution's own nodes / breakpoints.
    panels
        Number of midpoint panels on ``[t0, t_k]``, and of product-trapezoid
        panels on ``[t_k, t_{k+1}]``.
    """
    y, own = _evaluator(solution)
    bp = np.asarray(own if breakpoints is None else breakpoints, dtype=float)
    if not 0 <= k < bp.size - 1:
        raise IndexError(f"need breakpoints t_k and t_(k+1); k={k}, {bp.size} breakpoints")
    if panels < 1:
        raise ValueError("panels must be >= 1")
    t0, t_k, t_next = bp[0], bp[k], bp[k + 1]
    if t0 < own[0] or t_next > own[-1]:
        raise IndexError(f"solution does not cover [{t0!r}, {t_next!r}]")

    inv_gamma = 1.0 / gamma(alpha)
    value = 0.0
    if k > 0:
        # kernel stays bounded here because t_next > t_k
        width = (t_k - t0) / panels
        s = t0 + width * (np.arange(panels) + 0.5)
        value = inv_gamma * width * np.sum((t_next - s) ** (alpha - 1.0) * eval_rhs(rhs, s, y(s)))

    # singular kernel at t_next: integrate it exactly against linear f
    s = np.linspace(t_k, t_next, panels + 1)
    local = inv_gamma * (a_weights(panels, alpha, (t_next - t_k) / panels) @ eval_rhs(rhs, s, y(s)))

    total = value + local
    share = value / total if total != 0.0 else 0.0
    return MemoryTermReport(k=k, value=float(value), local=float(local), relative_share=float(share))


def derivative_jump(pw: PiecewiseSeries, i: int, eps: float) -> SlopeProbe:
    """One-sided difference quotients of ``pw`` at interior breakpoint ``i``.

    The left quotient uses piece ``i - 1`` and the right one uses piece ``i``.
    """
    M = len(pw)
    if not 0 < i < M:
        raise DomainError(f"breakpoint index must satisfy 0 < i < {M}, got {i}")
    bp = pw.breakpoints
    if not 0.0 < eps < min(bp[i] - bp[i - 1], bp[i + 1] - bp[i]):
        raise DomainError(f"probe width {eps!r} must be positive and below the adjacent widths")
    t_i = bp[i]
    left_piece, right_piece = pw.pieces[i - 1], pw.pieces[i]
    y_left = eval_series(left_piece, t_i)
    left = (y_left - eval_series(left_piece, t_i - eps)) / eps
    right = (eval_series(right_piece, t_i + eps) - right_piece.coeffs[0]) / eps
    return SlopeProbe(float(left), float(right))


def jump_exponent(
    pw: PiecewiseSeries,
    i: int,
    eps_values: Sequence[float] = (1e-3, 1e-4, 1e-5),
) -> float:
    """Least-squares slope of ``log|right_slope|`` against ``log eps``.

    Expected to approach ``alpha - 1`` for the restart at breakpoint ``i``.
    """
    eps = np.asarray(eps_values, dtype=float)
    right = np.array([derivative_jump(pw, i, e).right_slope for e in eps])
    slope, _ = np.polyfit(np.log(eps), np.log(np.abs(right)), 1)
    return float(slope)
