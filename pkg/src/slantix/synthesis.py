"""Closed-form construction of slant helices from their intrinsic equations.

Three routes produce curves:

* the printed closed forms of the Salkowski, anti-Salkowski and
  constant-precession examples (:func:`salkowski_curve` and friends, with
  sampled wrappers that attach analytic frames);
* the parametric route in ``t`` (:func:`position_parametric_t`), where the
  inner integrals are elementary and only the outer integral needs quadrature;
* the natural route in ``s`` (:func:`position_natural`), a fully nested
  cumulative quadrature of ``kappa * N``.

Orientation conventions
-----------------------
With the unmirrored normal ``N(t) = ((n/m) cos t, (n/m) sin t, n)`` the arcsin
branch realises a positive torsion ratio and the arccos branch a negative one
(frames right-handed, ``B = T x N``).  When ``params.sign`` asks for the other
sign every vector is reflected across the xz-plane, which flips torsion and
keeps the axis ``e3``.
"""

import math

import numpy as np

from .curves import FrenetFrame, Generator, SampledCurve, gram_schmidt
from .errors import DomainError, FrameError, SingularParameterError
from .profiles import AntiSalkowski, Branch, ConstantPrecession, Salkowski, f_of_theta
from .quadrature import DEFAULT_TOL, cumulative_simpson

# ---------------------------------------------------------------------------
# parameter maps


def _check_unit_interval(params, theta):
    mt = params.m * np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(mt)) or np.any(np.abs(mt) > 1.0):
        raise DomainError("|m*theta| must not exceed 1")
    return mt


def t_of_theta(params, theta):
    mt = _check_unit_interval(params, theta)
    if params.branch is Branch.ARCSIN:
        return np.arcsin(mt) / params.n
    return np.arccos(mt) / params.n


def theta_of_t(params, t):
    nt = params.n * np.asarray(t, dtype=float)
    if params.branch is Branch.ARCSIN:
        return np.sin(nt) / params.m
    return np.cos(nt) / params.m


def dtheta_dt(params, t):
    n, m = params.n, params.m
    nt = n * np.asarray(t, dtype=float)
    if params.branch is Branch.ARCSIN:
        return n / m * np.cos(nt)
    return -n / m * np.sin(nt)


def _check_t_range(params, t):
    nt = params.n * np.asarray(t, dtype=float)
    if params.branch is Branch.ARCSIN:
        ok = np.abs(nt) < 0.5 * math.pi
        rng = "|n t| < pi/2"
    else:
        ok = (nt > 0) & (nt < math.pi)
        rng = "0 < n t < pi"
    if not np.all(ok & np.isfinite(nt)):
        raise DomainError(f"t outside {params.branch.value} range ({rng})")


# ---------------------------------------------------------------------------
# analytic frame along t


def _mirror(v, params):
    if params.mirrored:
        v = np.array(v, dtype=float, copy=True)
        v[..., 1] *= -1.0
    return v


def _raw_normal(params, t):
    n, m = params.n, params.m
    t = np.asarray(t, dtype=float)
    r = n / m
    return np.stack([r * np.cos(t), r * np.sin(t), np.full_like(t, n)], axis=-1)


def _raw_tangent(params, t):
    """Unit tangent along increasing theta: the inner integral of N dtheta."""
    n, m = params.n, params.m
    t = np.asarray(t, dtype=float)
    a, b = 1.0 + n, 1.0 - n
    k = n * n / (m * m)
    if params.branch is Branch.ARCSIN:
        # int cos t cos nt dt and int sin t cos nt dt
        c = 0.5 * (np.sin(a * t) / a + np.sin(b * t) / b)
        s = -0.5 * (np.cos(a * t) / a + np.cos(b * t) / b)
        return np.stack([k * c, k * s, n / m * np.sin(n * t)], axis=-1)
    # int cos t sin nt dt and int sin t sin nt dt, times dtheta/dt sign
    c = -0.5 * (np.cos(a * t) / a - np.cos(b * t) / b)
    s = 0.5 * (np.sin(b * t) / b - np.sin(a * t) / a)
    return np.stack([-k * c, -k * s, n / m * np.cos(n * t)], axis=-1)


def frame_arrays_t(params, t, orientation=1):
    """Analytic (T, N, B) at slant parameter ``t``; T points along ``orientation * dtheta``."""
    T = orientation * _mirror(_raw_tangent(params, t), params)
    N = _mirror(_raw_normal(params, t), params)
    return T, N, np.cross(T, N)


def normal_vector(params, theta):
    """Principal normal of the canonical slant helix (axis e3) at turn ``theta``."""
    return _mirror(_raw_normal(params, t_of_theta(params, theta)), params)


def tangent_vector(params, theta):
    """Unit tangent (along increasing theta) of the canonical slant helix."""
    return _mirror(_raw_tangent(params, t_of_theta(params, theta)), params)


def frame_at_theta(params, theta):
    T, N, B = frame_arrays_t(params, t_of_theta(params, float(theta)))
    return FrenetFrame(T, N, B)


def axis_vector(params, frame, theta, tol=1e-9):
    """Fixed axis ``n (theta T + N + sign sqrt(1 - m^2 theta^2)/m B)``.

    ``frame`` must be oriented along increasing theta.
    """
    if frame.defect > tol:
        raise FrameError(f"frame defect {frame.defect:.3g} exceeds {tol:g}")
    mt = float(_check_unit_interval(params, theta))
    root = math.sqrt(max(0.0, 1.0 - mt * mt)) / params.m
    return params.n * (theta * frame.T + frame.N + params.s * root * frame.B)


def binormal_from_normal(params, theta, normal_samples=None, h=1e-3):
    """Binormal recovered from the normal alone: ``(N'' + (1 + f^2) N) / f'``.

    ``normal_samples`` holds N at ``theta + k h`` for ``k = -2..2``; when
    omitted it is sampled from :func:`normal_vector`.
    """
    theta = float(theta)
    if normal_samples is None:
        normal_samples = normal_vector(params, theta + h * np.arange(-2, 3))
    N = np.asarray(normal_samples, dtype=float)
    if N.shape != (5, 3):
        raise ValueError("normal_samples must have shape (5, 3)")
    d2 = (-N[0] + 16 * N[1] - 30 * N[2] + 16 * N[3] - N[4]) / (12 * h * h)
    f = float(f_of_theta(params, theta))
    mt = params.m * theta
    fprime = params.s * params.m * (1.0 - mt * mt) ** -1.5
    return (d2 + (1.0 + f * f) * N[2]) / fprime


# ---------------------------------------------------------------------------
# printed closed forms


def _require_printed(params, family):
    if params.branch is not Branch.ARCSIN:
        raise ValueError(f"the {family} closed form uses the arcsin branch; "
                         "use position_parametric_t for arccos")


def _check_half(params, family):
    if abs(2.0 * params.n - 1.0) < 1e-12:
        raise SingularParameterError(
            f"{family} closed form is singular at n = 1/2 (denominator 2n - 1 vanishes)"
        )


def salkowski_curve(params, t):
    """Position of the unit-curvature slant helix at slant parameter ``t``."""
    _require_printed(params, "Salkowski")
    _check_half(params, "Salkowski")
    n, m = params.n, params.m
    t = np.asarray(t, dtype=float)
    p, q = 2 * n + 1, 2 * n - 1
    c = n / (4 * m)
    x = c * ((n - 1) / p * np.cos(p * t) + (n + 1) / q * np.cos(q * t) - 2 * np.cos(t))
    y = c * ((n - 1) / p * np.sin(p * t) - (n + 1) / q * np.sin(q * t) - 2 * np.sin(t))
    z = -n / (4 * m * m) * np.cos(2 * n * t)
    return _mirror(np.stack([x, y, z], axis=-1), params)


def anti_salkowski_curve(params, t, check_domain=True):
    """Position of the unit-torsion slant helix; curvature is ``cot(n t)``."""
    _require_printed(params, "anti-Salkowski")
    _check_half(params, "anti-Salkowski")
    n, m = params.n, params.m
    t = np.asarray(t, dtype=float)
    if check_domain:
        nt = n * t
        if np.any(~((nt > 0) & (nt < 0.5 * math.pi))):
            raise DomainError("anti-Salkowski curvature cot(n t) is positive only for 0 < n t < pi/2")
    p, q = 1 + 2 * n, 1 - 2 * n
    c = n / (4 * m)
    x = c * ((n - 1) / (2 * n + 1) * np.sin(p * t) + (n + 1) / (2 * n - 1) * np.sin((2 * n - 1) * t)
             - 2 * n * np.sin(t))
    y = c * ((1 - n) / p * np.cos(p * t) - (1 + n) / q * np.cos(q * t) + 2 * n * np.cos(t))
    z = n / (4 * m * m) * (2 * n * t - np.sin(2 * n * t))
    return _mirror(np.stack([x, y, z], axis=-1), params)


def constant_precession_curve(mu, params, s):
    """Position of the curve with ``kappa = (mu/m) cos(mu s)``, ``tau = (mu/m) sin(mu s)``."""
    _require_printed(params, "constant-precession")
    if not mu > 0:
        raise DomainError("mu must be positive")
    n, m = params.n, params.m
    s = np.asarray(s, dtype=float)
    u, v = mu * s, mu * s / n
    c = -m * m / (n * mu)
    x = c * ((1 + n * n) * np.cos(u) * np.cos(v) + 2 * n * np.sin(u) * np.sin(v))
    y = c * ((1 + n * n) * np.cos(u) * np.sin(v) - 2 * n * np.sin(u) * np.cos(v))
    z = -n / (m * mu) * np.cos(u)
    return _mirror(np.stack([x, y, z], axis=-1), params)


def kappa_in_t(profile):
    """Curvature of a named slant family as a function of its slant parameter."""
    if not isinstance(profile, (Salkowski, AntiSalkowski, ConstantPrecession)):
        raise TypeError(f"no t-form curvature for {type(profile).__name__}")
    params = profile.params
    n = params.n
    if isinstance(profile, Salkowski):
        return lambda t: np.ones_like(np.asarray(t, dtype=float))
    if isinstance(profile, AntiSalkowski):
        return lambda t: 1.0 / np.tan(n * np.asarray(t, dtype=float))
    mu, m = profile.mu, params.m
    return lambda t: mu / m * np.cos(n * np.asarray(t, dtype=float))


def _grid(values, name):
    values = np.atleast_1d(np.asarray(values, dtype=float))
    if values.ndim != 1 or values.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D sequence")
    if values.size > 1 and np.any(np.diff(values) <= 0):
        raise ValueError(f"{name} must be strictly increasing")
    return values


def _sampled(params, profile, t, position, s, orientation, kappa=None, tau=None):
    """Assemble a closed-form SampledCurve, reordering to increasing s."""
    theta = theta_of_t(params, t)
    T, N, B = frame_arrays_t(params, t, orientation)
    kappa = profile.kappa(s) if kappa is None else kappa
    tau = profile.tau(s) if tau is None else tau
    order = np.argsort(s)
    return SampledCurve(
        s=s[order], t=t[order], theta=theta[order], position=position[order],
        T=T[order], N=N[order], B=B[order],
        kappa=kappa[order], tau=tau[order],
        parameter="t", generator=Generator.CLOSED_FORM, profile=profile,
        params=params, orientation=orientation,
    )


def sample_salkowski(params, t_grid):
    t = _grid(t_grid, "t_grid")
    _check_t_range(params, t)
    profile = Salkowski(params)
    s = np.sin(params.n * t) / params.m
    return _sampled(params, profile, t, salkowski_curve(params, t), s, 1)


def sample_anti_salkowski(params, t_grid):
    """Arc length is ``cos(n t)/m``, so samples come out in reverse t order."""
    t = _grid(t_grid, "t_grid")
    profile = AntiSalkowski(params)
    position = anti_salkowski_curve(params, t)
    s = np.cos(params.n * t) / params.m
    return _sampled(params, profile, t, position, s, -1)


def sample_constant_precession(mu, params, s_grid):
    """Closed-form samples at any s.

    Past ``|mu s| = pi/2`` the stored curvature ``(mu/m) cos(mu s)`` turns
    negative and the frame is the analytic continuation of the one inside;
    the slant-helix checks only apply on ``|mu s| < pi/2``.
    """
    s = _grid(s_grid, "s_grid")
    profile = ConstantPrecession(mu, params)
    t = mu * s / params.n
    kappa = mu / params.m * np.cos(mu * s)
    tau = params.s * mu / params.m * np.sin(mu * s)
    curve = _sampled(params, profile, t, constant_precession_curve(mu, params, s), s, 1, kappa, tau)
    curve.parameter = "s"
    return curve


# ---------------------------------------------------------------------------
# quadrature routes


def position_parametric_t(params, kappa_of_t, t_grid, s0=0.0, offset=None, tol=DEFAULT_TOL):
    """Slant helix from curvature given as a function of the slant parameter.

    Integrates ``dpsi/dt = T(t) (dtheta/dt) / kappa(t)`` and
    ``ds/dt = (dtheta/dt) / kappa(t)`` cumulatively from ``t_grid[0]``, where
    ``T(t)`` is the elementary inner integral.  ``psi(t_grid[0]) = offset``
    (origin by default) and ``s(t_grid[0]) = s0``.
    """
    t = _grid(t_grid, "t_grid")
    _check_t_range(params, t)
    if np.any(np.asarray(kappa_of_t(t)) <= 0):
        raise DomainError("curvature must be positive on the t grid")

    def integrand(u):
        speed = dtheta_dt(params, u) / kappa_of_t(u)
        tangent = _mirror(_raw_tangent(params, u), params)
        return np.column_stack([tangent * speed[:, None], speed])

    acc = cumulative_simpson(integrand, t, tol=tol)
    position = acc[:, :3]
    if offset is not None:
        position = position + np.asarray(offset, dtype=float)
    s = s0 + acc[:, 3]
    theta = theta_of_t(params, t)
    kappa = np.asarray(kappa_of_t(t), dtype=float) * np.ones_like(t)
    tau = kappa * f_of_theta(params, theta)
    T, N, B = frame_arrays_t(params, t)
    order = np.argsort(s)
    return SampledCurve(
        s=s[order], t=t[order], theta=theta[order], position=position[order],
        T=T[order], N=N[order], B=B[order], kappa=kappa[order], tau=tau[order],
        parameter="t", generator=Generator.NESTED_QUADRATURE, params=params,
    )


def position_natural(profile, params, s_grid, offset=None, tol=DEFAULT_TOL):
    """Slant helix by nested quadrature of ``psi = int (int kappa N ds) ds``.

    ``N`` is the closed-form normal at ``theta(s)``; the inner integral starts
    from the closed-form tangent at ``s_grid[0]`` and the outer one from
    ``offset`` (origin by default).  The double integral over each grid
    interval is reduced to single integrals of ``kappa N`` and ``s kappa N``.
    """
    own = getattr(profile, "params", None)
    if own is not None and own != params:
        raise ValueError("params disagree with the profile's own slant parameters")
    s = _grid(s_grid, "s_grid")
    orientation = getattr(profile, "orientation", 1)
    theta = profile.theta(s)
    normal = normal_vector(params, theta)
    kappa = profile.kappa(s)
    tau = profile.tau(s)

    def integrand(v):
        kn = profile.kappa(v)[:, None] * normal_vector(params, profile.theta(v))
        return np.hstack([kn, v[:, None] * kn])

    acc = cumulative_simpson(integrand, s, tol=tol)
    inner, weighted = acc[:, :3], acc[:, 3:]
    T0 = orientation * tangent_vector(params, theta[0])
    tangent = T0 + inner
    position = np.zeros((s.size, 3))
    if s.size > 1:
        steps = np.diff(s)[:, None]
        d_inner = np.diff(inner, axis=0)
        d_weighted = np.diff(weighted, axis=0)
        increments = steps * tangent[:-1] + s[1:, None] * d_inner - d_weighted
        position[1:] = np.cumsum(increments, axis=0)
    if offset is not None:
        position = position + np.asarray(offset, dtype=float)
    # keep the analytic normal exact, project the integrated tangent onto its complement
    N, T, NxT = gram_schmidt(normal, tangent)
    return SampledCurve(
        s=s, t=t_of_theta(params, theta), theta=theta, position=position,
        T=T, N=N, B=-NxT, kappa=kappa, tau=tau, parameter="s",
        generator=Generator.NESTED_QUADRATURE, profile=profile, params=params,
        orientation=orientation,
    )
