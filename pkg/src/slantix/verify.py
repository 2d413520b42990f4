"""Convention-independent checks on sampled curves.

Every check returns a :class:`VerificationReport`.  Finite-difference checks
use central stencils only and drop the boundary samples a stencil cannot
reach; the report records how many were dropped.
"""

import json
import math
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (DegenerateError, DomainError, MissingFrameError,
                     ParameterMismatchError, TooFewSamplesError)
from .oracle import IntegratorConfig, seeded_oracle
from .profiles import ConstantPrecession, f_of_theta
from .synthesis import normal_vector

DEGENERATE_CROSS = 1e-10
UNIFORM_RTOL = 1e-8

# default tolerances of the slant-helix suite
UNIT_SPEED_TOL = 1e-6
NORMAL_ANGLE_TOL = 1e-8
AXIS_SPREAD_TOL = 1e-8
SIGMA_TOL = 1e-5
ORACLE_TOL = 1e-6
ODE_TOL = 1e-5
DARBOUX_TOL = 1e-9


@dataclass
class VerificationReport:
    check: str
    max: float
    mean: float
    rms: float
    tolerance: float | None
    passed: bool | None
    n_samples: int
    n_dropped: int = 0
    notes: str = ""
    residuals: np.ndarray = field(default=None, repr=False)

    @classmethod
    def from_residuals(cls, check, residuals, tolerance=None, n_dropped=0, notes=""):
        r = np.abs(np.asarray(residuals, dtype=float).ravel())
        finite = np.isfinite(r)
        n_dropped += int((~finite).sum())
        r = r[finite]
        if r.size == 0:
            return cls(check, math.nan, math.nan, math.nan, tolerance, False if tolerance else None,
                       0, n_dropped, (notes + "; no usable samples").lstrip("; "), r)
        mx = float(r.max())
        passed = None if tolerance is None else bool(mx <= tolerance)
        return cls(check, mx, float(r.mean()), float(np.sqrt(np.mean(r * r))), tolerance,
                   passed, int(r.size), n_dropped, notes, r)

    def to_dict(self):
        return {
            "check": self.check, "max": self.max, "mean": self.mean, "rms": self.rms,
            "tolerance": self.tolerance, "pass": self.passed, "n_samples": self.n_samples,
            "n_dropped": self.n_dropped, "notes": self.notes,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    def line(self):
        status = {True: "PASS", False: "FAIL", None: "INFO"}[self.passed]
        tol = "-" if self.tolerance is None else f"{self.tolerance:.0e}"
        return f"{status} {self.check}: max={self.max:.3e} tol={tol} n={self.n_samples}"


# ---------------------------------------------------------------------------
# stencils


def _spacing(u):
    u = np.asarray(u, dtype=float)
    if u.size < 2 or not np.all(np.isfinite(u)):
        raise ValueError("parameter column is undefined")
    steps = np.diff(u)
    h = steps.mean()
    if np.max(np.abs(steps - h)) > UNIFORM_RTOL * max(abs(h), 1e-300) + 1e-15:
        raise ValueError("samples are not uniformly spaced in the curve's parameter")
    return h


def _d1(x, h, i):
    return (x[i - 2] - 8 * x[i - 1] + 8 * x[i + 1] - x[i + 2]) / (12 * h)


def _d2(x, h, i):
    return (-x[i - 2] + 16 * x[i - 1] - 30 * x[i] + 16 * x[i + 1] - x[i + 2]) / (12 * h * h)


def _d3(x, h, i):
    return (x[i - 3] - 8 * x[i - 2] + 13 * x[i - 1] - 13 * x[i + 1] + 8 * x[i + 2] - x[i + 3]) / (8 * h ** 3)


def _d1_7(x, h, i):
    return (-x[i - 3] + 9 * x[i - 2] - 45 * x[i - 1] + 45 * x[i + 1] - 9 * x[i + 2] + x[i + 3]) / (60 * h)


def _d2_7(x, h, i):
    return (2 * x[i - 3] - 27 * x[i - 2] + 270 * x[i - 1] - 490 * x[i]
            + 270 * x[i + 1] - 27 * x[i + 2] + 2 * x[i + 3]) / (180 * h * h)


def _d3_9(x, h, i):
    return (-7 * x[i - 4] + 72 * x[i - 3] - 338 * x[i - 2] + 488 * x[i - 1]
            - 488 * x[i + 1] + 338 * x[i + 2] - 72 * x[i + 3] + 7 * x[i + 4]) / (240 * h ** 3)


def central_derivative(values, h, order):
    """Central finite difference along axis 0; NaN where the stencil leaves the data.

    Orders 1 and 2 use 5-point stencils, order 3 uses the 7-point stencil.
    """
    x = np.asarray(values, dtype=float)
    half = 3 if order == 3 else 2
    out = np.full(x.shape, np.nan)
    if x.shape[0] <= 2 * half:
        raise TooFewSamplesError(f"need more than {2 * half} samples for order-{order} stencil")
    i = np.arange(half, x.shape[0] - half)
    out[i] = {1: _d1, 2: _d2, 3: _d3}[order](x, h, i)
    return out


# ---------------------------------------------------------------------------
# intrinsic estimates


@dataclass
class IntrinsicEstimate:
    kappa: np.ndarray
    tau: np.ndarray
    valid: np.ndarray
    n_dropped: int
    n_degenerate: int


def estimate_curvature_torsion(curve):
    """Curvature and torsion of the sampled positions by central differences.

    ``kappa = |x' x x''| / |x'|^3`` and ``tau = det(x', x'', x''') / |x' x x''|^2``
    are invariant under reparameterisation, so derivatives are taken in the
    curve's own uniform parameter.  The three samples at each end and any
    sample with ``|x' x x''| < 1e-10`` come back as NaN.
    """
    k = len(curve)
    if k < 7:
        raise TooFewSamplesError("curvature/torsion estimation needs at least 7 samples")
    h = _spacing(curve.param_values)
    x = curve.position
    d1 = central_derivative(x, h, 1)
    d2 = central_derivative(x, h, 2)
    d3 = central_derivative(x, h, 3)
    cross = np.cross(d1, d2)
    cn = np.linalg.norm(cross, axis=1)
    interior = np.isfinite(d3).all(axis=1)
    degenerate = interior & (cn < DEGENERATE_CROSS)
    valid = interior & ~degenerate
    kappa = np.full(k, np.nan)
    tau = np.full(k, np.nan)
    speed = np.linalg.norm(d1[valid], axis=1)
    kappa[valid] = cn[valid] / speed ** 3
    tau[valid] = np.einsum("ij,ij->i", cross[valid], d3[valid]) / cn[valid] ** 2
    return IntrinsicEstimate(kappa, tau, valid, int((~interior).sum()), int(degenerate.sum()))


def unit_speed_check(curve, tolerance=UNIT_SPEED_TOL):
    """|d psi / ds| - 1 at interior samples (chain rule when stored in t)."""
    h = _spacing(curve.param_values)
    speed = np.linalg.norm(central_derivative(curve.position, h, 1), axis=1)
    if curve.parameter == "t":
        speed = speed / np.abs(central_derivative(curve.s, h, 1))
    return VerificationReport.from_residuals("unit_speed", speed - 1.0, tolerance)


def intrinsic_match_check(curve, kappa_expected=None, tau_expected=None, tolerance=1e-4,
                          label="intrinsic"):
    """Estimated (kappa, tau) against expected per-sample values (stored ones by default)."""
    est = estimate_curvature_torsion(curve)
    ke = curve.kappa if kappa_expected is None else np.asarray(kappa_expected, dtype=float)
    te = curve.tau if tau_expected is None else np.asarray(tau_expected, dtype=float)
    kr = VerificationReport.from_residuals(f"{label}_kappa", est.kappa - ke, tolerance,
                                           notes=f"degenerate={est.n_degenerate}")
    tr = VerificationReport.from_residuals(f"{label}_tau", est.tau - te, tolerance,
                                           notes=f"degenerate={est.n_degenerate}")
    return kr, tr


# ---------------------------------------------------------------------------
# slant-helix detectors


def sigma_profile(kappa, tau, s):
    """Geodesic curvature of the principal-normal indicatrix,
    ``kappa^2 / (kappa^2 + tau^2)^(3/2) * d(tau/kappa)/ds``.

    ``s`` is either the uniform spacing or the per-sample arc length of
    samples that are uniform in some other parameter (the derivative is then
    taken by the chain rule with the same stencil).  The two samples at each
    end are NaN.
    """
    kappa = np.asarray(kappa, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if np.any(~(kappa > 0)):
        raise DegenerateError("sigma needs strictly positive curvature at every sample")
    ratio = tau / kappa
    if np.ndim(s) == 0:
        dratio = central_derivative(ratio, float(s), 1)
    else:
        dratio = central_derivative(ratio, 1.0, 1) / central_derivative(np.asarray(s, dtype=float), 1.0, 1)
    return kappa ** 2 / (kappa ** 2 + tau ** 2) ** 1.5 * dratio


def sigma_check(curve, expected=None, tolerance=SIGMA_TOL, source="stored"):
    """Constancy of sigma; against ``|sigma| = m`` when the slant constants are known.

    ``source="stored"`` differentiates the generator's (kappa, tau) columns,
    ``"estimated"`` the finite-difference estimates from positions.
    """
    if source == "estimated":
        est = estimate_curvature_torsion(curve)
        kappa, tau = est.kappa, est.tau
        keep = est.valid
    else:
        kappa, tau = curve.kappa, curve.tau
        keep = np.isfinite(kappa) & np.isfinite(tau)
    if curve.parameter == "s":
        _spacing(curve.s)
    else:
        _spacing(curve.t)
    idx = np.flatnonzero(keep)
    if idx.size < 5 or np.any(np.diff(idx) != 1):
        raise DegenerateError("sigma needs a contiguous run of valid samples")
    sig = sigma_profile(kappa[idx], tau[idx], curve.s[idx])
    finite = sig[np.isfinite(sig)]
    sign = int(np.sign(np.median(finite))) if finite.size else 0
    if expected is None and curve.params is not None:
        expected = curve.params.m
    if expected is not None:
        resid = np.abs(sig) - expected
        notes = f"expected |sigma| = {expected:.9g}; observed sign {sign:+d}"
    else:
        resid = sig - np.median(finite)
        notes = f"constancy about median {np.median(finite):.9g}"
    return VerificationReport.from_residuals("sigma_constancy", resid, tolerance,
                                             n_dropped=len(curve) - idx.size, notes=notes)


def fit_normal_axis(curve):
    """Axis making the most nearly constant angle with the normals, and that cosine."""
    if not curve.has_frames:
        raise MissingFrameError("slant-angle fitting needs frames")
    N = curve.N
    centred = N - N.mean(axis=0)
    _, vecs = np.linalg.eigh(centred.T @ centred)
    axis = vecs[:, 0]
    if axis @ N.mean(axis=0) < 0:
        axis = -axis
    return axis, float(np.mean(N @ axis))


def slant_angle_check(curve, axis=None, n=None, tolerance=NORMAL_ANGLE_TOL):
    """|<N_i, axis> - n| at every sample.

    Defaults: the canonical axis e3 with the curve's own ``n``; with no slant
    constants attached, the best-fitting axis and mean cosine.
    """
    if not curve.has_frames:
        raise MissingFrameError("slant-angle check needs frames")
    notes = ""
    if axis is None and n is None and curve.params is None:
        axis, n = fit_normal_axis(curve)
        notes = f"fitted axis {np.round(axis, 9).tolist()}, cosine {n:.9g}"
    if axis is None:
        axis = np.array([0.0, 0.0, 1.0])
    if n is None:
        n = curve.params.n
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return VerificationReport.from_residuals("normal_angle", curve.N @ axis - n, tolerance, notes=notes)


def axis_recovery(curve, params=None, tolerance=AXIS_SPREAD_TOL):
    """Recover the fixed axis sample by sample from (T, N, B) and theta.

    The two sign choices of the reconstruction are both evaluated and the one
    with the smaller spread is kept (the right one depends on the frame's
    orientation along the curve).
    """
    if not curve.has_frames:
        raise MissingFrameError("axis recovery needs frames")
    params = params or curve.params
    if params is None:
        raise ValueError("axis recovery needs slant parameters")
    n = params.n
    f = f_of_theta(params, curve.theta)[:, None]
    b = np.sqrt((1.0 - n * n) / (1.0 + f * f))
    best = None
    for eps in (1.0, -1.0):
        d = eps * f * b * curve.T + n * curve.N + eps * b * curve.B
        mean = d.mean(axis=0)
        dev = np.abs(d - mean).max(axis=1)
        if best is None or dev.max() < best[1].max():
            best = (mean, dev, eps)
    mean, dev, eps = best
    axis = mean / np.linalg.norm(mean)
    report = VerificationReport.from_residuals(
        "axis_spread", dev, tolerance,
        notes=f"axis {np.round(axis, 9).tolist()}, branch sign {eps:+.0f}")
    return axis, report


# ---------------------------------------------------------------------------
# ODE residuals of the analytic normal


def _default_theta_grid(params, h, fraction=0.9):
    half = fraction / params.m
    count = int(round(2 * half / h))
    return np.linspace(-half, half, count + 1)


def third_order_ode_residual(params, theta_grid=None, h=1e-3, tolerance=ODE_TOL,
                             normal=None, form="reduced"):
    """Finite-difference residual of the third-order equation satisfied by N(theta).

    ``form="reduced"``: ``(1 - m^2 th^2) N''' - 3 m^2 th N'' + N' = 0``.
    ``form="general"``: ``[(N'' + (1 + f^2) N) / f']' + f N = 0`` (the general
    equation multiplied through by f so that theta = 0 is admissible).
    """
    normal = normal or partial(normal_vector, params)
    theta = _default_theta_grid(params, h) if theta_grid is None else np.asarray(theta_grid, dtype=float)
    m = params.m
    # the third derivative uses a 9-point O(h^6) stencil: near |m theta| = 0.9
    # the 7-point one alone exceeds 1e-5 for n close to 1
    reach = 5 if form == "general" else 4
    if np.any(np.abs(m * theta) + reach * h * m >= 1.0):
        raise DomainError("stencils must stay inside |m theta| < 1")

    offsets = np.arange(-reach, reach + 1)
    pts = theta[:, None] + h * offsets[None, :]
    Nst = np.asarray(normal(pts.ravel()), dtype=float).reshape(theta.size, offsets.size, 3)
    Nst = np.moveaxis(Nst, 1, 0)  # stencil index first
    c = reach
    N0 = Nst[c]
    d1 = _d1_7(Nst, h, c)
    if np.any(np.abs(np.linalg.norm(N0, axis=1) - 1.0) > 1e-6) or np.any(np.linalg.norm(d1, axis=1) < 0.5):
        raise DegenerateError("supplied field is not the principal normal of a unit-speed curve "
                              "(|N| must be 1 and |dN/dtheta| >= 1)")

    if form == "reduced":
        d2 = _d2_7(Nst, h, c)
        d3 = _d3_9(Nst, h, c)
        mt2 = (m * theta) ** 2
        resid = (1 - mt2)[:, None] * d3 - 3 * m * m * theta[:, None] * d2 + d1
        name = "ode_reduced"
    elif form == "general":
        f_pts = f_of_theta(params, pts)  # (k, stencil)
        mt2 = (m * pts) ** 2
        fprime = params.s * m * (1 - mt2) ** -1.5
        Bs = []
        for j in range(c - 2, c + 3):
            d2j = _d2_7(Nst, h, j)
            Bs.append((d2j + (1 + f_pts[:, j, None] ** 2) * Nst[j]) / fprime[:, j, None])
        Bs = np.stack(Bs)
        dB = _d1(Bs, h, 2)
        resid = dB + f_pts[:, c, None] * N0
        name = "ode_general"
    else:
        raise ValueError("form must be 'reduced' or 'general'")
    return VerificationReport.from_residuals(
        name, np.abs(resid).max(axis=1), tolerance,
        notes=f"h={h:g}, {theta.size} points, m*theta in [{m * theta.min():.3g}, {m * theta.max():.3g}]")


# ---------------------------------------------------------------------------
# Darboux vector and the precession hyperboloid


def darboux_checks(curve, tolerance=DARBOUX_TOL):
    """|W| for W = tau T + kappa B and, for constant precession, the hyperboloid.

    For a constant-precession profile |W| must equal mu/m and the closed-form
    samples must satisfy ``x^2 + y^2 - m^2 z^2 = 4 m^4 / mu^2`` (``4 m^2`` when
    ``mu == m``).  For other profiles the |W| statistic is reported without a
    verdict.
    """
    if not curve.has_frames:
        raise MissingFrameError("Darboux vector needs frames")
    W = curve.tau[:, None] * curve.T + curve.kappa[:, None] * curve.B
    wn = np.linalg.norm(W, axis=1)
    profile = curve.profile
    reports = []
    if isinstance(profile, ConstantPrecession):
        target = profile.mu / profile.params.m
        reports.append(VerificationReport.from_residuals(
            "darboux_norm", wn - target, tolerance, notes=f"|W| target mu/m = {target:.9g}"))
        if curve.generator.value == "closed-form":
            m = profile.params.m
            x, y, z = curve.position.T
            const = 4 * m ** 4 / profile.mu ** 2
            reports.append(VerificationReport.from_residuals(
                "hyperboloid", x * x + y * y - m * m * z * z - const, tolerance,
                notes=f"x^2+y^2-m^2 z^2 = {const:.9g}"))
    else:
        spread = wn - wn.mean()
        reports.append(VerificationReport.from_residuals(
            "darboux_norm", spread, None,
            notes=f"profile only; |W| ranges {wn.min():.6g}..{wn.max():.6g}"))
    return reports


# ---------------------------------------------------------------------------
# curve comparison


def compare_curves(a, b, tolerance=None):
    """Pointwise distance between two curves at a's arc-length values.

    ``b`` is resampled by a cubic spline in s when its samples differ; no
    rigid registration is performed.
    """
    lo, hi = max(a.s[0], b.s[0]), min(a.s[-1], b.s[-1])
    if lo > hi:
        raise ParameterMismatchError("arc-length ranges do not overlap")
    pad = 1e-12 * max(1.0, abs(lo), abs(hi))
    keep = (a.s >= lo - pad) & (a.s <= hi + pad)
    s = a.s[keep]
    notes = ""
    if b.s.size == a.s.size and np.array_equal(b.s, a.s):
        pb = b.position[keep]
    elif b.s.size >= 4:
        pb = CubicSpline(b.s, b.position)(np.clip(s, b.s[0], b.s[-1]))
        notes = "b resampled by cubic spline in s"
    else:
        raise ParameterMismatchError("need at least four samples to resample")
    dist = np.linalg.norm(a.position[keep] - pb, axis=1)
    report = VerificationReport.from_residuals("curve_distance", dist, tolerance,
                                               n_dropped=int((~keep).sum()), notes=notes)
    report.notes = (report.notes + f"; arc-length span {s[-1] - s[0]:.6g}").lstrip("; ")
    return report


# ---------------------------------------------------------------------------
# suites


def oracle_check(curve, config=None, tolerance=ORACLE_TOL):
    oracle = seeded_oracle(curve, config or IntegratorConfig())
    report = compare_curves(curve, oracle, tolerance)
    report.check = "oracle_distance"
    return report


def slant_suite(curve, params=None, oracle_config=None, include_oracle=True):
    """Run every slant-helix check applicable to ``curve``."""
    params = params or curve.params
    reports = []
    if curve.generator.value != "ode-oracle":
        reports.append(unit_speed_check(curve))
    reports.append(slant_angle_check(curve, n=None if params is None else params.n))
    if params is not None:
        reports.append(axis_recovery(curve, params)[1])
    reports.append(sigma_check(curve))
    if include_oracle and curve.profile is not None and curve.generator.value != "ode-oracle":
        reports.append(oracle_check(curve, oracle_config))
    if isinstance(curve.profile, ConstantPrecession):
        reports.extend(darboux_checks(curve))
    return reports


def all_passed(reports):
    return all(r.passed is not False for r in reports)
