"""Problem and solution data shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DomainError",
    "SolverOverflowError",
    "PolynomialRHS",
    "FractionalIVP",
    "Trajectory",
    "eval_rhs",
    "make_uniform_grid",
    "RICCATI",
]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class SolverOverflowError(OverflowError):
    """Raised when a solver produces a non-finite value.

    ``index`` is the step (ABM) or sub-interval (MSGDTM) at which the blow-up
    was detected, when known.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class PolynomialRHS:
    r"""Autonomous right-hand side :math:`f(t, y) = \sum_d c_d y^d`.

    Trailing zero coefficients are stripped, but at least the constant term is
    always kept, so ``PolynomialRHS((0.0,))`` is the zero function.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        c = [float(v) for v in self.coeffs]
        if not c:
            raise ValueError("rhs coefficients required")
        if not all(np.isfinite(c)):
            raise ValueError("rhs coefficients must be finite")
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t, y):
        return eval_rhs(self, t, y)


#: ``f(t, y) = 1 + 2 y - y^2``, the fractional Riccati benchmark.
RICCATI = PolynomialRHS((1.0, 2.0, -1.0))


@dataclass(frozen=True)
class FractionalIVP:
    """Caputo problem ``D^alpha y = f(t, y)`` on ``[t0, t_end]``, ``y(t0) = y0``."""

    alpha: float
    t0: float
    y0: float
    rhs: PolynomialRHS
    t_end: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha out of (0,1]: {self.alpha!r}")
        if not self.t_end > self.t0:
            raise ValueError(f"t_end must exceed t0, got t0={self.t0!r}, t_end={self.t_end!r}")
        if not np.isfinite(self.y0):
            raise ValueError("y0 must be finite")
        if not isinstance(self.rhs, PolynomialRHS):
            object.__setattr__(self, "rhs", PolynomialRHS(tuple(self.rhs)))


@dataclass(frozen=True)
class Trajectory:
    """Solution values on a strictly increasing grid of time nodes."""

    nodes: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        values = np.array(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape:
            raise ValueError("nodes and values must be 1d arrays of equal length")
        if nodes.size == 0:
            raise ValueError("empty trajectory")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("trajectory values must be finite")
        nodes.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.nodes.size

    def __repr__(self) -> str:
        return f"Trajectory(n={len(self)}, t=[{self.nodes[0]:g}, {self.nodes[-1]:g}])"

    def __call__(self, t):
        """Piecewise-linear interpolation between nodes (no extrapolation)."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < self.nodes[0]) or np.any(t_arr > self.nodes[-1]):
            raise DomainError("time outside the trajectory's node range")
        out = np.interp(t_arr, self.nodes, self.values)
        return float(out) if out.ndim == 0 else out


def eval_rhs(rhs: PolynomialRHS, t, y):
    """Evaluate ``f(t, y)`` by Horner's rule; ``t`` is ignored (autonomous).

    Works elementwise when ``y`` is an array.
    """
    coeffs = rhs.coeffs
    acc = coeffs[-1] * np.ones_like(y, dtype=float) if np.ndim(y) else coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * y + c
    return acc


def make_uniform_grid(t0: float, t_end: float, n_steps: int) -> np.ndarray:
    """Return ``n_steps + 1`` nodes ``t0 + j h`` with the last node set to ``t_end``."""
    if int(n_steps) != n_steps or n_steps < 1:
        raise ValueError(f"n_steps must be a positive integer, got {n_steps!r}")
    if not t_end > t0:
        raise ValueError("t_end must exceed t0")
    n_steps = int(n_steps)
    h = (t_end - t0) / n_steps
    nodes = t0 + h * np.arange(n_steps + 1, dtype=float)
    nodes[-1] = t_end
    return nodes

