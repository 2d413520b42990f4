"""Intrinsic equations kappa(s), tau(s) and the slant-helix constants.

A profile is an immutable object that evaluates curvature, torsion and the
cumulative turn ``theta(s) = int kappa ds`` on arrays of arc length.  The
named slant families (Salkowski, anti-Salkowski, constant precession) carry a
:class:`SlantParameters` instance; the generic constructor
:class:`SlantFromKappa` derives torsion from any positive curvature through
the slant-helix condition.
"""

import csv
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError
from .interpolation import MonotoneCubic
from .quadrature import adaptive_simpson, cumulative_simpson

# |m theta| must stay below this; the torsion ratio blows up at 1
DOMAIN_MARGIN = 1e-12
THETA_TOL = 1e-10


class Branch(enum.Enum):
    ARCSIN = "arcsin"
    ARCCOS = "arccos"


class Sign(enum.Enum):
    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        if text in ("+", "+1", "1", "plus"):
            return cls.PLUS
        if text in ("-", "-1", "minus"):
            return cls.MINUS
        raise ValueError(f"unrecognised sign {value!r}")


def parse_ratio(text):
    """Parse ``"1/3"``, ``"0.25"`` or a number exactly, then round once to float."""
    if isinstance(text, (int, float)):
        return float(text)
    return float(Fraction(str(text).strip()))


@dataclass(frozen=True)
class SlantParameters:
    """Constants of a slant helix whose principal normal makes angle ``phi``
    with a fixed axis.

    ``n = cos(phi)`` and ``m = n / sqrt(1 - n**2)``.  ``sign`` selects the
    sign of the torsion ratio ``f = tau/kappa = sign * m theta / sqrt(1 - m^2 theta^2)``
    and ``branch`` selects ``t = arcsin(m theta)/n`` or ``t = arccos(m theta)/n``.
    """

    n: float
    branch: Branch = Branch.ARCSIN
    sign: Sign = Sign.PLUS

    def __post_init__(self):
        n = float(self.n)
        if not (0.0 < n < 1.0) or not math.isfinite(n):
            raise DomainError(f"n must lie in (0, 1), got {self.n!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "branch", Branch(self.branch))
        object.__setattr__(self, "sign", Sign.parse(self.sign))

    @classmethod
    def from_angle(cls, phi, **kwargs):
        if not (0.0 < phi < math.pi / 2):
            raise DomainError("phi must lie in (0, pi/2)")
        return cls(math.cos(phi), **kwargs)

    @classmethod
    def from_m(cls, m, **kwargs):
        if not m > 0:
            raise DomainError("m must be positive")
        return cls(m / math.sqrt(1.0 + m * m), **kwargs)

    @property
    def m(self):
        return self.n / math.sqrt(1.0 - self.n * self.n)

    @property
    def phi(self):
        return math.acos(self.n)

    @property
    def s(self):
        """Signed unit carried by ``sign`` (+1.0 or -1.0)."""
        return float(self.sign.value)

    @property
    def natural_sign(self):
        """Torsion sign realised by the branch's unmirrored normal vector."""
        return Sign.PLUS if self.branch is Branch.ARCSIN else Sign.MINUS

    @property
    def mirrored(self):
        """True when constructions must reflect across the xz-plane."""
        return self.sign is not self.natural_sign

    def replace(self, **changes):
        values = {"n": self.n, "branch": self.branch, "sign": self.sign}
        values.update(changes)
        return SlantParameters(**values)


def _check_theta(params, theta):
    mt = params.m * np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(mt)) or np.any(np.abs(mt) >= 1.0 - DOMAIN_MARGIN):
        raise DomainError(
            f"|m*theta| must stay below 1 (max {np.max(np.abs(mt)):.6g} for m={params.m:.6g})"
        )
    return mt


def f_of_theta(params, theta):
    """Torsion-to-curvature ratio of a slant helix as a function of theta."""
    mt = _check_theta(params, theta)
    return params.s * mt / np.sqrt(1.0 - mt * mt)


# ---------------------------------------------------------------------------
# curvature specifications


class CurvatureSpec:
    """Positive curvature as a function of arc length, with its running integral."""

    domain = (-math.inf, math.inf)

    def __call__(self, s):
        raise NotImplementedError

    def theta(self, s):
        raise NotImplementedError

    _closed_domain = False

    def _check(self, s):
        s = np.asarray(s, dtype=float)
        lo, hi = self.domain
        if self._closed_domain:
            inside = (s >= lo) & (s <= hi)
        else:
            inside = (s > lo) & (s < hi)
        if not np.all(inside & np.isfinite(s)):
            raise DomainError(f"s outside curvature domain ({lo:.6g}, {hi:.6g})")
        return s


@dataclass(frozen=True)
class ConstantKappa(CurvatureSpec):
    kappa0: float

    def __post_init__(self):
        if not self.kappa0 > 0:
            raise DomainError("constant curvature must be positive")

    def __call__(self, s):
        s = self._check(s)
        return np.full_like(s, self.kappa0, dtype=float)

    def theta(self, s):
        return self.kappa0 * self._check(s)


@dataclass(frozen=True)
class CosineKappa(CurvatureSpec):
    """``kappa = (mu/m) cos(mu s)``, positive for ``|mu s| < pi/2``."""

    mu: float
    m: float

    def __post_init__(self):
        if not (self.mu > 0 and self.m > 0):
            raise DomainError("mu and m must be positive")

    @property
    def domain(self):
        half = 0.5 * math.pi / self.mu
        return (-half, half)

    def __call__(self, s):
        s = self._check(s)
        return self.mu / self.m * np.cos(self.mu * s)

    def theta(self, s):
        return np.sin(self.mu * self._check(s)) / self.m


class TabulatedKappa(CurvatureSpec):
    """Curvature interpolated through ``(s, kappa)`` rows with monotone cubics.

    ``theta`` integrates the interpolant from ``s_ref`` (0 when the table
    covers it, otherwise the first row).
    """

    _closed_domain = True

    def __init__(self, s, kappa, s_ref=None):
        s = np.asarray(s, dtype=float)
        kappa = np.asarray(kappa, dtype=float)
        if np.any(kappa <= 0):
            raise DomainError("tabulated curvature must be positive")
        self._interp = MonotoneCubic(s, kappa)
        self.domain = (float(s[0]), float(s[-1]))
        if s_ref is None:
            s_ref = 0.0 if s[0] <= 0.0 <= s[-1] else float(s[0])
        if not (s[0] <= s_ref <= s[-1]):
            raise DomainError("s_ref must lie inside the table")
        self.s_ref = float(s_ref)
        # running integral at the knots, anchored at s_ref
        knots = cumulative_simpson(self._interp, s, tol=THETA_TOL)
        self._knot_theta = knots - float(adaptive_simpson(self._interp, s[0], self.s_ref, THETA_TOL))
        self._knots = s

    def __call__(self, s):
        return self._interp(self._check(s))

    def theta(self, s):
        s = self._check(s)
        flat = np.atleast_1d(s).ravel()
        k = np.clip(np.searchsorted(self._knots, flat, side="right") - 1, 0, self._knots.size - 2)
        out = np.empty_like(flat)
        for i, (u, j) in enumerate(zip(flat, k)):
            out[i] = self._knot_theta[j] + adaptive_simpson(self._interp, self._knots[j], u, THETA_TOL)
        return out.reshape(np.shape(s)) if np.ndim(s) else out[0]


# ---------------------------------------------------------------------------
# intrinsic profiles


class IntrinsicProfile:
    """Base class: curvature, torsion and turn angle on a declared domain.

    ``orientation`` is +1 when theta increases with s and -1 for the one
    family whose conventional theta runs against arc length.
    """

    name = "profile"
    params = None
    orientation = 1

    @property
    def domain(self):
        return (-math.inf, math.inf)

    def _check_s(self, s):
        s = np.asarray(s, dtype=float)
        lo, hi = self.domain
        if np.any(~np.isfinite(s)) or np.any(s <= lo) or np.any(s >= hi):
            raise DomainError(f"s outside {self.name} domain ({lo:.6g}, {hi:.6g})")
        return s

    def kappa(self, s):
        raise NotImplementedError

    def tau(self, s):
        raise NotImplementedError

    def theta(self, s):
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantCurve(IntrinsicProfile):
    """Circle (``tau0 == 0``) or circular helix."""

    kappa0: float
    tau0: float = 0.0
    name = "constant"

    def __post_init__(self):
        if not self.kappa0 > 0:
            raise DomainError("kappa0 must be positive")

    def kappa(self, s):
        return np.full_like(self._check_s(s), self.kappa0, dtype=float)

    def tau(self, s):
        return np.full_like(self._check_s(s), self.tau0, dtype=float)

    def theta(self, s):
        return self.kappa0 * self._check_s(s)


@dataclass(frozen=True)
class Salkowski(IntrinsicProfile):
    """kappa = 1, tau = +/- m s / sqrt(1 - m^2 s^2) on |s| < 1/m."""

    params: SlantParameters
    name = "salkowski"

    @property
    def domain(self):
        half = 1.0 / self.params.m
        return (-half, half)

    def kappa(self, s):
        return np.ones_like(self._check_s(s))

    def tau(self, s):
        return f_of_theta(self.params, self._check_s(s))

    def theta(self, s):
        return np.array(self._check_s(s), dtype=float)


@dataclass(frozen=True)
class AntiSalkowski(IntrinsicProfile):
    """kappa = m s / sqrt(1 - m^2 s^2), tau = +/- 1 on 0 < s < 1/m.

    theta follows the conventional ``sqrt(1 - m^2 s^2)/m``, which decreases
    along the curve (``orientation == -1``).
    """

    params: SlantParameters
    name = "anti-salkowski"
    orientation = -1

    @property
    def domain(self):
        return (0.0, 1.0 / self.params.m)

    def kappa(self, s):
        ms = self.params.m * self._check_s(s)
        return ms / np.sqrt(1.0 - ms * ms)

    def tau(self, s):
        return np.full_like(self._check_s(s), self.params.s)

    def theta(self, s):
        ms = self.params.m * self._check_s(s)
        return np.sqrt(1.0 - ms * ms) / self.params.m


@dataclass(frozen=True)
class ConstantPrecession(IntrinsicProfile):
    """kappa = (mu/m) cos(mu s), tau = +/- (mu/m) sin(mu s) on |mu s| < pi/2."""

    mu: float
    params: SlantParameters
    name = "precession"

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError("mu must be positive")

    @property
    def domain(self):
        half = 0.5 * math.pi / self.mu
        return (-half, half)

    def kappa(self, s):
        return self.mu / self.params.m * np.cos(self.mu * self._check_s(s))

    def tau(self, s):
        return self.params.s * self.mu / self.params.m * np.sin(self.mu * self._check_s(s))

    def theta(self, s):
        return np.sin(self.mu * self._check_s(s)) / self.params.m


@dataclass(frozen=True)
class SlantFromKappa(IntrinsicProfile):
    """Any positive curvature with torsion fixed by the slant-helix condition."""

    kappa_spec: CurvatureSpec
    params: SlantParameters
    name = "slant-from-kappa"

    @property
    def domain(self):
        return self.kappa_spec.domain

    def _check_s(self, s):
        s = np.asarray(s, dtype=float)
        lo, hi = self.domain
        if np.any(~np.isfinite(s)) or np.any(s < lo) or np.any(s > hi):
            raise DomainError(f"s outside curvature domain ({lo:.6g}, {hi:.6g})")
        return s

    def kappa(self, s):
        return self.kappa_spec(self._check_s(s))

    def tau(self, s):
        return slant_tau_from_kappa(self.kappa_spec, self.params, s)

    def theta(self, s):
        return self.kappa_spec.theta(self._check_s(s))


class Tabulated(IntrinsicProfile):
    """Rows of ``(s, kappa, tau)``.

    Curvature is interpolated by a monotone cubic (keeps it positive between
    positive rows); torsion by a not-a-knot cubic spline.
    """

    name = "tabulated"

    def __init__(self, s, kappa, tau):
        s = np.asarray(s, dtype=float)
        tau = np.asarray(tau, dtype=float)
        if s.size < 2 or np.any(np.diff(s) <= 0):
            raise DomainError("tabulated s must be strictly increasing with at least two rows")
        self._kappa = TabulatedKappa(s, kappa)
        # torsion may change sign, so the positivity-preserving interpolant buys nothing
        self._tau = CubicSpline(s, tau) if s.size >= 4 else MonotoneCubic(s, tau)
        self.rows = np.column_stack([s, np.asarray(kappa, dtype=float), tau])

    @classmethod
    def from_rows(cls, rows):
        rows = np.asarray(rows, dtype=float)
        return cls(rows[:, 0], rows[:, 1], rows[:, 2])

    @classmethod
    def from_csv(cls, path):
        """Load a table with (at least) columns ``s``, ``kappa``, ``tau``."""
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            missing = {"s", "kappa", "tau"} - set(reader.fieldnames or ())
            if missing:
                raise ValueError(f"CSV lacks columns {sorted(missing)}")
            rows = [(float(r["s"]), float(r["kappa"]), float(r["tau"])) for r in reader]
        return cls.from_rows(rows)

    @classmethod
    def from_profile(cls, profile, s):
        s = np.asarray(s, dtype=float)
        return cls(s, profile.kappa(s), profile.tau(s))

    @property
    def domain(self):
        return self._kappa.domain

    def _check_s(self, s):
        s = np.asarray(s, dtype=float)
        lo, hi = self.domain
        if np.any(~np.isfinite(s)) or np.any(s < lo) or np.any(s > hi):
            raise DomainError(f"s outside table range [{lo:.6g}, {hi:.6g}]")
        return s

    def kappa(self, s):
        return self._kappa(self._check_s(s))

    def tau(self, s):
        return self._tau(self._check_s(s))

    def theta(self, s):
        return self._kappa.theta(self._check_s(s))


# ---------------------------------------------------------------------------
# functional surface


def eval_kappa(profile, s):
    return profile.kappa(s)


def eval_tau(profile, s):
    return profile.tau(s)


def theta_of_s(profile, s):
    return profile.theta(s)


def slant_tau_from_kappa(kappa, params, s):
    """Torsion that makes a curve with curvature ``kappa`` a slant helix.

    ``tau = sign * m kappa theta / sqrt(1 - m^2 theta^2)`` with
    ``theta = kappa.theta(s)``.
    """
    theta = kappa.theta(s)
    return kappa(s) * f_of_theta(params, theta)


class FunctionProfile(IntrinsicProfile):
    """Curvature and torsion given as vectorised callables (closed domain).

    Used for control curves; theta is not tracked.
    """

    def __init__(self, kappa, tau, domain=(-math.inf, math.inf), name="function"):
        self._kappa_fn = kappa
        self._tau_fn = tau
        self._domain = (float(domain[0]), float(domain[1]))
        self.name = name

    @property
    def domain(self):
        return self._domain

    def _check_s(self, s):
        s = np.asarray(s, dtype=float)
        lo, hi = self._domain
        if np.any(~np.isfinite(s)) or np.any(s < lo) or np.any(s > hi):
            raise DomainError(f"s outside {self.name} domain [{lo:.6g}, {hi:.6g}]")
        return s

    def kappa(self, s):
        s = self._check_s(s)
        return np.asarray(self._kappa_fn(s), dtype=float) * np.ones_like(s)

    def tau(self, s):
        s = self._check_s(s)
        return np.asarray(self._tau_fn(s), dtype=float) * np.ones_like(s)


def ratio_control(ratio=lambda s: s * s, kappa=1.0, domain=(-math.inf, math.inf)):
    """Control curve with constant curvature and ``tau = kappa * ratio(s)``.

    The default ``ratio(s) = s**2`` is not a slant helix.
    """
    return FunctionProfile(lambda s: np.full_like(s, kappa), lambda s: kappa * ratio(s),
                           domain, name="ratio-control")


def general_helix(ratio, kappa=lambda s: 1.0 + 0.5 * np.sin(s), domain=(-math.inf, math.inf)):
    """Variable curvature with constant ``tau/kappa`` (a general helix)."""
    return FunctionProfile(kappa, lambda s: ratio * kappa(s), domain, name="general-helix")
