"""Multi-step GDTM: restart the GDTM series on each of ``M`` equal sub-intervals.

.. warning::

    This module reproduces the multi-step method as published, including its
    defect. Each piece treats its left endpoint as the lower limit of a fresh
    Caputo derivative and only inherits the previous piece's end value. The
    history integral over ``[t0, t_i]`` is dropped, so for ``alpha < 1`` the
    assembled curve solves a different equation on every piece after the
    first, and its slope jumps at every interior breakpoint. For
    ``alpha = 1`` the restart is exact and the method is an ordinary
    high-order Taylor integrator. See :mod:`fracivp.diagnostics`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fracivp.gdtm import TransformSeries, eval_series, gdtm_coefficients
from fracivp.problem import DomainError, FractionalIVP, SolverOverflowError, make_uniform_grid

__all__ = ["PiecewiseSeries", "solve_msgdtm", "sample"]


@dataclass(frozen=True)
class PiecewiseSeries:
    """Series pieces on consecutive sub-intervals ``[t_i, t_{i+1}]``."""

    pieces: tuple[TransformSeries, ...]
    breakpoints: np.ndarray

    def __post_init__(self) -> None:
        pieces = tuple(self.pieces)
        bp = np.array(self.breakpoints, dtype=float)
        if bp.ndim != 1 or bp.size != len(pieces) + 1:
            raise ValueError("need one more breakpoint than pieces")
        if np.any(np.diff(bp) <= 0.0):
            raise ValueError("breakpoints must be strictly increasing")
        for i, piece in enumerate(pieces):
            if piece.base != bp[i]:
                raise ValueError(f"piece {i} is anchored at {piece.base!r}, expected {bp[i]!r}")
        bp.flags.writeable = False
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "breakpoints", bp)

    def __len__(self) -> int:
        return len(self.pieces)

    def __repr__(self) -> str:
        return (
            f"PiecewiseSeries(M={len(self)}, N={self.pieces[0].order}, "
            f"t=[{self.breakpoints[0]:g}, {self.breakpoints[-1]:g}])"
        )

    def __call__(self, t):
        return sample(self, t)


def solve_msgdtm(ivp: FractionalIVP, M: int, N: int) -> PiecewiseSeries:
    """Split ``[t0, t_end]`` into ``M`` equal pieces and run GDTM of order ``N``
    on each, seeding piece ``i`` with the value of piece ``i - 1`` at their
    shared breakpoint.

    Raises :class:`~fracivp.problem.SolverOverflowError` carrying the index of
    the offending piece if a coefficient or hand-off value becomes non-finite.
    """
    if int(M) != M or M < 1:
        raise ValueError(f"M must be a positive integer, got {M!r}")
    breakpoints = make_uniform_grid(ivp.t0, ivp.t_end, int(M))
    pieces = []
    y_start = ivp.y0
    for i in range(int(M)):
        try:
            piece = gdtm_coefficients(ivp, N, base=breakpoints[i], y_base=y_start)
        except SolverOverflowError as err:
            raise SolverOverflowError(f"piece {i}: {err}", index=i) from err
        y_start = eval_series(piece, breakpoints[i + 1])
        if not np.isfinite(y_start):
            raise SolverOverflowError(f"piece {i}: end value is not finite", index=i)
        pieces.append(piece)
    return PiecewiseSeries(tuple(pieces), breakpoints)


def _piece_index(pw: PiecewiseSeries, t: np.ndarray) -> np.ndarray:
    bp = pw.breakpoints
    if np.any(t < bp[0]) or np.any(t > bp[-1]):
        raise DomainError(f"t outside [{bp[0]!r}, {bp[-1]!r}]")
    # half-open [t_i, t_{i+1}); the final breakpoint belongs to the last piece
    return np.minimum(np.searchsorted(bp, t, side="right") - 1, len(pw) - 1)


def sample(pw: PiecewiseSeries, t):
    """Evaluate the piecewise solution at scalar or array ``t``."""
    t_arr = np.asarray(t, dtype=float)
    idx = _piece_index(pw, t_arr)
    if t_arr.ndim == 0:
        return eval_series(pw.pieces[int(idx)], float(t_arr))
    out = np.empty(t_arr.shape)
    for i in np.unique(idx):
        mask = idx == i
        out[mask] = eval_series(pw.pieces[i], t_arr[mask])
    return out
