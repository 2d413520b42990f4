"""Monotone piecewise-cubic Hermite interpolation (Fritsch-Carlson slopes)."""

import numpy as np


def _end_slope(h0, h1, d0, d1):
    # one-sided parabola, pulled back when it would break monotonicity
    d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
    if np.sign(d) != np.sign(d0):
        return 0.0
    if np.sign(d0) != np.sign(d1) and abs(d) > 3 * abs(d0):
        return 3 * d0
    return d


def fritsch_carlson_slopes(x, y):
    """Node slopes that keep the Hermite interpolant monotone between nodes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    h = np.diff(x)
    delta = np.diff(y) / h
    n = x.size
    d = np.empty(n)
    if n == 2:
        d[:] = delta[0]
        return d
    # three-point (parabolic) estimates; the plain secant mean on uniform grids
    d[1:-1] = (h[1:] * delta[:-1] + h[:-1] * delta[1:]) / (h[:-1] + h[1:])
    d[0] = _end_slope(h[0], h[1], delta[0], delta[1])
    d[-1] = _end_slope(h[-1], h[-2], delta[-1], delta[-2])
    # local extrema and flat segments get zero slope
    d[1:-1][delta[:-1] * delta[1:] <= 0] = 0.0
    for k in np.flatnonzero(delta == 0.0):
        d[k] = d[k + 1] = 0.0
    nz = delta != 0.0
    alpha = np.zeros_like(delta)
    beta = np.zeros_like(delta)
    alpha[nz] = d[:-1][nz] / delta[nz]
    beta[nz] = d[1:][nz] / delta[nz]
    radius = np.hypot(alpha, beta)
    for k in np.flatnonzero(radius > 3.0):
        scale = 3.0 / radius[k]
        d[k] = scale * alpha[k] * delta[k]
        d[k + 1] = scale * beta[k] * delta[k]
    return d


class MonotoneCubic:
    """Callable monotone cubic Hermite interpolant through ``(x, y)``.

    Evaluation outside ``[x[0], x[-1]]`` raises ``ValueError``; callers decide
    what an out-of-range request means.
    """

    def __init__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape:
            raise ValueError("x and y must be 1-D arrays of equal length")
        if x.size < 2:
            raise ValueError("need at least two nodes")
        if np.any(np.diff(x) <= 0):
            raise ValueError("x must be strictly increasing")
        self.x = x
        self.y = y
        self.slopes = fritsch_carlson_slopes(x, y)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u < self.x[0]) or np.any(u > self.x[-1]):
            raise ValueError("evaluation point outside interpolation range")
        k = np.clip(np.searchsorted(self.x, u, side="right") - 1, 0, self.x.size - 2)
        h = self.x[k + 1] - self.x[k]
        s = (u - self.x[k]) / h
        s2 = s * s
        s3 = s2 * s
        h00 = 2 * s3 - 3 * s2 + 1
        h10 = s3 - 2 * s2 + s
        h01 = -2 * s3 + 3 * s2
        h11 = s3 - s2
        return (h00 * self.y[k] + h10 * h * self.slopes[k]
                + h01 * self.y[k + 1] + h11 * h * self.slopes[k + 1])
