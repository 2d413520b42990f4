"""Fixed-step RK4 integration of the Frenet-Serret system.

The state is the 4x3 block ``[T; N; B; psi]`` with

    T' = kappa N,  N' = -kappa T + tau B,  B' = -tau N,  psi' = T.

The system is linear in the state, so each RK4 step is the product of a 4x4
propagator (built in one vectorised pass from kappa and tau at the step
endpoints and midpoint) with the current state.  The frame is
re-orthonormalised by Gram-Schmidt on a fixed schedule.
"""

import math
from dataclasses import dataclass

import numpy as np

from .curves import FrenetFrame, Generator, SampledCurve, orthonormality_defect
from .errors import FrameError, MissingFrameError, StepError

MAX_STEPS = 50_000_000


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-4
    renormalize_every: int = 1
    method: str = "rk4"

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise StepError("step must be positive and finite")
        if int(self.renormalize_every) < 1:
            raise StepError("renormalize_every must be >= 1")
        if self.method.lower() != "rk4":
            raise StepError(f"unsupported method {self.method!r}")


@dataclass(frozen=True)
class InitialState:
    position: np.ndarray
    frame: FrenetFrame
    s0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float).reshape(3))
        self.frame.check(1e-9)


def _generator_matrices(kappa, tau):
    k = kappa.size
    A = np.zeros((k, 4, 4))
    A[:, 0, 1] = kappa
    A[:, 1, 0] = -kappa
    A[:, 1, 2] = tau
    A[:, 2, 1] = -tau
    A[:, 3, 0] = 1.0
    return A


def _rk4_propagators(profile, s_left, h):
    """RK4 one-step maps ``Y_{k+1} = P_k Y_k`` for every step at once."""
    mid = s_left + 0.5 * h
    right = s_left + h
    A1 = _generator_matrices(profile.kappa(s_left), profile.tau(s_left))
    A2 = _generator_matrices(profile.kappa(mid), profile.tau(mid))
    A4 = _generator_matrices(profile.kappa(right), profile.tau(right))
    hh = h[:, None, None]
    eye = np.eye(4)
    K1 = A1
    K2 = A2 @ (eye + 0.5 * hh * K1)
    K3 = A2 @ (eye + 0.5 * hh * K2)
    K4 = A4 @ (eye + hh * K3)
    return eye + hh / 6.0 * (K1 + 2.0 * K2 + 2.0 * K3 + K4)


def _step_grid(s0, s_end, step):
    if s_end < s0:
        raise StepError("integration runs forward only (s_end < s0)")
    span = s_end - s0
    full = int(math.floor(span / step * (1 + 1e-12)))
    if full > MAX_STEPS:
        raise StepError(f"{full} steps exceed the cap of {MAX_STEPS}")
    grid = s0 + step * np.arange(full + 1)
    # the last step shrinks to land exactly on s_end
    if s_end - grid[-1] > 1e-9 * step:
        grid = np.append(grid, s_end)
    else:
        grid[-1] = s_end
    return grid


def integrate_frenet(profile, init, s_end, config=None):
    """Integrate the Frenet-Serret equations of ``profile`` from ``init`` to ``s_end``.

    Returns a :class:`SampledCurve` with one sample per step (parameter ``s``).
    """
    config = config or IntegratorConfig()
    grid = _step_grid(init.s0, float(s_end), config.step)
    h = np.diff(grid)
    P = _rk4_propagators(profile, grid[:-1], h) if h.size else np.zeros((0, 4, 4))

    k = grid.size
    states = np.empty((k, 4, 3))
    Y = np.vstack([init.frame.T, init.frame.N, init.frame.B, init.position])
    states[0] = Y
    every = int(config.renormalize_every)
    for i in range(h.size):
        Y = P[i] @ Y
        if (i + 1) % every == 0:
            t0, t1, t2 = Y[0]
            norm = math.sqrt(t0 * t0 + t1 * t1 + t2 * t2)
            t0, t1, t2 = t0 / norm, t1 / norm, t2 / norm
            n0, n1, n2 = Y[1]
            dot = n0 * t0 + n1 * t1 + n2 * t2
            n0, n1, n2 = n0 - dot * t0, n1 - dot * t1, n2 - dot * t2
            norm = math.sqrt(n0 * n0 + n1 * n1 + n2 * n2)
            n0, n1, n2 = n0 / norm, n1 / norm, n2 / norm
            Y[:3] = ((t0, t1, t2), (n0, n1, n2),
                     (t1 * n2 - t2 * n1, t2 * n0 - t0 * n2, t0 * n1 - t1 * n0))
        states[i + 1] = Y
    T, N, B, X = (states[:, j] for j in range(4))

    theta = np.full(k, np.nan)
    try:
        theta = profile.theta(grid)
    except (NotImplementedError, ArithmeticError, ValueError):
        pass
    return SampledCurve(
        s=grid, position=X, T=T, N=N, B=B, theta=theta,
        kappa=profile.kappa(grid), tau=profile.tau(grid), parameter="s",
        generator=Generator.ODE_ORACLE, profile=profile,
        params=getattr(profile, "params", None),
        orientation=getattr(profile, "orientation", 1),
        meta={"step": config.step, "renormalize_every": every,
              "max_frame_defect": float(orthonormality_defect(T, N, B).max())},
    )


def initial_state_from_closed_form(curve, index=0):
    """Copy position and frame of one sample as the integrator's initial condition."""
    try:
        frame = curve.frame(index).check(1e-9)
    except FrameError as exc:
        raise MissingFrameError(f"sample {index} has a degenerate frame: {exc}") from exc
    return InitialState(curve.position[index], frame, float(curve.s[index]))


def seeded_oracle(curve, config=None, index=0):
    """Integrate the curve's own profile from sample ``index`` to its last sample."""
    if curve.profile is None:
        raise ValueError("curve carries no intrinsic profile to integrate")
    init = initial_state_from_closed_form(curve, index)
    return integrate_frenet(curve.profile, init, float(curve.s[-1]), config)


def integrate_on_grid(profile, init, s_grid, config=None):
    """Oracle output at the points of a uniform ``s_grid`` starting at ``init.s0``.

    The step is reduced from ``config.step`` until it divides the grid spacing,
    so every output sample is an integrator node and no step is shortened.
    """
    config = config or IntegratorConfig()
    s = np.asarray(s_grid, dtype=float)
    if s.ndim != 1 or s.size < 2:
        raise StepError("s_grid needs at least two points")
    spacing = np.diff(s)
    h = spacing.mean()
    if not h > 0 or np.ptp(spacing) > 1e-9 * h:
        raise StepError("s_grid must be uniform and increasing")
    if abs(s[0] - init.s0) > 1e-12 * max(1.0, abs(s[0])):
        raise StepError("s_grid must start at the initial state's s0")
    per_sample = max(1, math.ceil(h / config.step * (1 - 1e-12)))
    fine = IntegratorConfig(float(h / per_sample), config.renormalize_every, config.method)
    full = integrate_frenet(profile, init, float(s[-1]), fine)
    if len(full) != (s.size - 1) * per_sample + 1:
        raise StepError("internal grid mismatch")
    out = full.subset(slice(None, None, per_sample))
    out.s = s.copy()
    out.meta["step"] = fine.step
    out.meta["steps_per_sample"] = per_sample
    return out
