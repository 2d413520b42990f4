"""Frenet frames and sampled curves.

A :class:`SampledCurve` stores its samples column-wise as numpy arrays, ordered
by increasing arc length.  ``parameter`` names the column in which the samples
are uniformly spaced (``"t"`` for closed forms in the slant parameter, ``"s"``
for natural-parameter and integrator output); finite-difference estimators
differentiate with respect to that column.
"""

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import FrameError, MissingFrameError

FRAME_TOL = 1e-12


class Generator(enum.Enum):
    CLOSED_FORM = "closed-form"
    NESTED_QUADRATURE = "nested-quadrature"
    ODE_ORACLE = "ode-oracle"


def orthonormality_defect(T, N, B):
    """Largest deviation of (T, N, B) from a right-handed orthonormal triad.

    Works on single vectors or stacks of shape ``(k, 3)``.
    """
    T, N, B = (np.asarray(v, dtype=float) for v in (T, N, B))
    defects = [
        np.abs(np.einsum("...i,...i", T, T) - 1.0),
        np.abs(np.einsum("...i,...i", N, N) - 1.0),
        np.abs(np.einsum("...i,...i", B, B) - 1.0),
        np.abs(np.einsum("...i,...i", T, N)),
        np.abs(np.einsum("...i,...i", T, B)),
        np.abs(np.einsum("...i,...i", N, B)),
        np.abs(np.cross(T, N) - B).max(axis=-1),
    ]
    return np.max(np.stack(defects), axis=0)


def gram_schmidt(T, N):
    """Orthonormalise keeping the direction of T; returns (T, N, B)."""
    T = np.asarray(T, dtype=float)
    N = np.asarray(N, dtype=float)
    T = T / np.linalg.norm(T, axis=-1, keepdims=True)
    N = N - np.einsum("...i,...i", N, T)[..., None] * T
    N = N / np.linalg.norm(N, axis=-1, keepdims=True)
    return T, N, np.cross(T, N)


@dataclass(frozen=True)
class FrenetFrame:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        for name in ("T", "N", "B"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise FrameError(f"{name} must be a 3-vector")
            object.__setattr__(self, name, v)

    @classmethod
    def identity(cls):
        return cls(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0]))

    @property
    def defect(self):
        return float(orthonormality_defect(self.T, self.N, self.B))

    def check(self, tol=FRAME_TOL):
        d = self.defect
        if not np.isfinite(d) or d > tol:
            raise FrameError(f"frame is not orthonormal/right-handed (defect {d:.3g} > {tol:g})")
        return self

    def as_matrix(self):
        """Rows T, N, B."""
        return np.vstack([self.T, self.N, self.B])


@dataclass(frozen=True)
class CurveSample:
    s: float
    theta: float
    t: float
    position: np.ndarray
    frame: Optional[FrenetFrame]
    kappa: float
    tau: float


@dataclass
class SampledCurve:
    """Arc-length ordered samples of a space curve.

    Attributes
    ----------
    s, t, theta : numpy.ndarray
        Arc length, slant parameter and cumulative turn; ``t``/``theta`` are
        NaN where undefined.
    position : numpy.ndarray
        Shape ``(k, 3)``.
    T, N, B : numpy.ndarray or None
        Frenet frame columns, oriented along increasing ``s``.
    kappa, tau : numpy.ndarray
        Intrinsic values attached by the generator (NaN if unknown).
    parameter : str
        ``"s"`` or ``"t"``: the uniformly spaced column.
    orientation : int
        +1 if theta increases with s, -1 otherwise.
    """

    s: np.ndarray
    position: np.ndarray
    t: Optional[np.ndarray] = None
    theta: Optional[np.ndarray] = None
    T: Optional[np.ndarray] = None
    N: Optional[np.ndarray] = None
    B: Optional[np.ndarray] = None
    kappa: Optional[np.ndarray] = None
    tau: Optional[np.ndarray] = None
    parameter: str = "s"
    generator: Generator = Generator.CLOSED_FORM
    profile: object = None
    params: object = None
    orientation: int = 1
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        k = self.s.size
        self.position = np.asarray(self.position, dtype=float).reshape(k, 3)
        nan = np.full(k, np.nan)
        for name in ("t", "theta", "kappa", "tau"):
            value = getattr(self, name)
            setattr(self, name, nan.copy() if value is None else np.asarray(value, dtype=float).reshape(k))
        for name in ("T", "N", "B"):
            value = getattr(self, name)
            if value is not None:
                setattr(self, name, np.asarray(value, dtype=float).reshape(k, 3))
        if k > 1 and np.any(np.diff(self.s) <= 0):
            raise ValueError("samples must be strictly increasing in s")
        if self.parameter not in ("s", "t"):
            raise ValueError("parameter must be 's' or 't'")

    def __len__(self):
        return self.s.size

    @property
    def has_frames(self):
        return self.T is not None and self.N is not None and self.B is not None

    @property
    def param_values(self):
        return self.s if self.parameter == "s" else self.t

    def frame(self, i):
        if not self.has_frames:
            raise MissingFrameError("curve carries no frames")
        frame = FrenetFrame(self.T[i], self.N[i], self.B[i])
        if not np.isfinite(frame.defect):
            raise MissingFrameError(f"frame at sample {i} is undefined")
        return frame

    def sample(self, i):
        frame = self.frame(i) if self.has_frames else None
        return CurveSample(
            s=float(self.s[i]), theta=float(self.theta[i]), t=float(self.t[i]),
            position=self.position[i].copy(), frame=frame,
            kappa=float(self.kappa[i]), tau=float(self.tau[i]),
        )

    def translated(self, offset):
        return replace(self, position=self.position + np.asarray(offset, dtype=float))

    def subset(self, index):
        """New curve with the selected samples (slice or index array)."""
        pick = lambda a: None if a is None else a[index]
        return replace(
            self, s=self.s[index], position=self.position[index], t=self.t[index],
            theta=self.theta[index], T=pick(self.T), N=pick(self.N), B=pick(self.B),
            kappa=self.kappa[index], tau=self.tau[index], meta=dict(self.meta),
        )
