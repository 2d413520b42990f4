"""Adaptive composite Simpson quadrature.

All panels at a given refinement level are evaluated in a single vectorised
call, so integrands must accept a 1-D array of abscissae and return either an
array of the same length or an array of shape ``(len(x), d)``.
"""

import numpy as np

from .errors import QuadratureError

DEFAULT_TOL = 1e-10
MAX_INTERVALS = 2**20


def _panel_simpson(f, a, b):
    """Simpson estimates on [a, b] with one and two sub-panels."""
    c = 0.5 * (a + b)
    d = 0.5 * (a + c)
    e = 0.5 * (c + b)
    x = np.concatenate([a, d, c, e, b])
    y = np.asarray(f(x), dtype=float)
    if y.shape[0] != x.shape[0]:
        raise ValueError("integrand must return one value per abscissa")
    fa, fd, fc, fe, fb = np.split(y, 5)
    w = (b - a)
    if y.ndim > 1:
        w = w[:, None]
    whole = w / 6.0 * (fa + 4.0 * fc + fb)
    halves = w / 12.0 * (fa + 4.0 * fd + 2.0 * fc + 4.0 * fe + fb)
    return whole, halves


def cumulative_simpson(f, grid, tol=DEFAULT_TOL, max_intervals=MAX_INTERVALS):
    """Running integral of ``f`` over an ordered grid, zero at ``grid[0]``.

    Each grid interval is refined independently until the Richardson error
    estimate of every panel is below its share of ``tol`` (shares are
    proportional to panel width, so ``tol`` bounds the total absolute error
    estimate over the whole grid).

    Parameters
    ----------
    f : callable
        Vectorised integrand.
    grid : array_like
        Strictly monotone abscissae (increasing or decreasing).
    tol : float
        Absolute tolerance for the full span.
    max_intervals : int
        Hard cap on the number of live panels.

    Returns
    -------
    numpy.ndarray
        Shape ``(len(grid),)`` or ``(len(grid), d)``.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-D array")
    if grid.size == 1:
        probe = np.asarray(f(grid), dtype=float)
        return np.zeros_like(probe)
    steps = np.diff(grid)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ValueError("grid must be strictly monotone")

    span = abs(grid[-1] - grid[0])
    a = grid[:-1].copy()
    b = grid[1:].copy()
    owner = np.arange(grid.size - 1)
    increments = None

    while a.size:
        if a.size > max_intervals:
            raise QuadratureError(
                f"adaptive Simpson exceeded {max_intervals} panels before reaching tol={tol:g}"
            )
        whole, halves = _panel_simpson(f, a, b)
        if not np.all(np.isfinite(halves)):
            raise QuadratureError("integrand produced non-finite values")
        if increments is None:
            increments = np.zeros((grid.size - 1,) + halves.shape[1:])
        diff = np.abs(halves - whole)
        if diff.ndim > 1:
            diff = diff.max(axis=1)
        err = diff / 15.0
        local_tol = tol * np.abs(b - a) / span
        done = err <= local_tol
        # round-off floor: panels that cannot be split further are accepted
        done |= np.abs(b - a) <= 4 * np.finfo(float).eps * np.maximum(np.abs(a), 1.0)
        extrapolated = halves + (halves - whole) / 15.0
        np.add.at(increments, owner[done], extrapolated[done])
        keep = ~done
        a, b, owner = a[keep], b[keep], owner[keep]
        mid = 0.5 * (a + b)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        owner = np.concatenate([owner, owner])

    out = np.zeros((grid.size,) + increments.shape[1:])
    out[1:] = np.cumsum(increments, axis=0)
    return out


def adaptive_simpson(f, a, b, tol=DEFAULT_TOL, max_intervals=MAX_INTERVALS):
    """Definite integral of a vectorised ``f`` over [a, b]."""
    if a == b:
        return np.zeros_like(np.asarray(f(np.array([a])), dtype=float)[0])
    return cumulative_simpson(f, np.array([a, b], dtype=float), tol, max_intervals)[-1]
