"""Named curve families and the generator routes that can build them."""

from dataclasses import dataclass, replace

import numpy as np

from .curves import FrenetFrame
from .oracle import InitialState, IntegratorConfig, integrate_on_grid
from .profiles import (AntiSalkowski, ConstantCurve, ConstantPrecession, Salkowski,
                       general_helix, ratio_control)
from .synthesis import (anti_salkowski_curve, constant_precession_curve, kappa_in_t,
                        normal_vector, position_natural, position_parametric_t,
                        salkowski_curve, sample_anti_salkowski, sample_constant_precession,
                        sample_salkowski, t_of_theta, tangent_vector)

ROUTES = ("closed-form", "parametric", "natural", "oracle")


@dataclass(frozen=True)
class Family:
    name: str
    slant: bool
    grid: str  # parameter of the closed form: "t" or "s"
    routes: tuple
    summary: str


FAMILIES = {
    f.name: f for f in (
        Family("salkowski", True, "t", ROUTES,
               "kappa = 1, tau = +/- m s / sqrt(1 - m^2 s^2)"),
        Family("anti-salkowski", True, "t", ROUTES,
               "kappa = m s / sqrt(1 - m^2 s^2), tau = +/- 1"),
        Family("precession", True, "s", ROUTES,
               "kappa = (mu/m) cos(mu s), tau = +/- (mu/m) sin(mu s)"),
        Family("helix", False, "s", ("oracle",),
               "constant kappa0, tau0 (circle when tau0 = 0)"),
        Family("general-helix", False, "s", ("oracle",),
               "kappa = 1 + sin(s)/2, tau = ratio * kappa"),
        Family("control", False, "s", ("oracle",),
               "kappa = 1, tau = s^2 (not a slant helix)"),
    )
}


def get_family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None


def make_profile(family, params=None, mu=None, kappa0=1.0, tau0=0.0, ratio=1.0):
    fam = get_family(family)
    if fam.slant and params is None:
        raise ValueError(f"{family} needs slant parameters")
    if family == "salkowski":
        return Salkowski(params)
    if family == "anti-salkowski":
        return AntiSalkowski(params)
    if family == "precession":
        return ConstantPrecession(params.m if mu is None else mu, params)
    if family == "helix":
        return ConstantCurve(kappa0, tau0)
    if family == "general-helix":
        return general_helix(ratio)
    return ratio_control()


def t_to_s(profile, t):
    """Arc length of the closed-form samples at slant parameter ``t``."""
    p = profile.params
    nt = p.n * np.asarray(t, dtype=float)
    if isinstance(profile, Salkowski):
        return np.sin(nt) / p.m
    if isinstance(profile, AntiSalkowski):
        return np.cos(nt) / p.m
    return p.n * np.asarray(t, dtype=float) / profile.mu


def _closed_form_position(profile, s0):
    p = profile.params
    try:
        t0 = t_of_theta(p, profile.theta(s0))
        if isinstance(profile, Salkowski):
            return salkowski_curve(p, t0)
        if isinstance(profile, AntiSalkowski):
            return anti_salkowski_curve(p, t0)
        return constant_precession_curve(profile.mu, p, s0)
    except ValueError:  # arccos branch or the n = 1/2 singularity
        return np.zeros(3)


def initial_state(profile, s0):
    """Closed-form frame and position at ``s0`` for slant families; the
    identity frame at the origin otherwise."""
    p = getattr(profile, "params", None)
    if p is None:
        return InitialState(np.zeros(3), FrenetFrame.identity(), s0)
    theta0 = float(profile.theta(s0))
    T = profile.orientation * tangent_vector(p, theta0)
    N = normal_vector(p, theta0)
    return InitialState(_closed_form_position(profile, s0), FrenetFrame(T, N, np.cross(T, N)), s0)


def build_curve(family, grid, route="closed-form", params=None, mu=None, config=None,
                kappa0=1.0, tau0=0.0, ratio=1.0):
    """Generate a sampled curve of ``family`` on ``grid`` by ``route``.

    ``grid`` is in the family's closed-form parameter (see :data:`FAMILIES`)
    for the closed-form and parametric routes and in arc length for the
    natural and oracle routes.
    """
    fam = get_family(family)
    if route not in fam.routes:
        raise ValueError(f"route {route!r} unavailable for {family}; use one of {fam.routes}")
    profile = make_profile(family, params, mu, kappa0, tau0, ratio)
    grid = np.asarray(grid, dtype=float)
    if route == "closed-form":
        if family == "salkowski":
            return sample_salkowski(params, grid)
        if family == "anti-salkowski":
            return sample_anti_salkowski(params, grid)
        return sample_constant_precession(profile.mu, params, grid)
    # quadrature routes start from the closed-form point so all routes overlay
    if route == "parametric":
        t = grid if fam.grid == "t" else profile.mu * grid / params.n
        s0 = float(t_to_s(profile, t[0]))
        offset = _closed_form_position(profile, s0)
        if profile.orientation == 1:
            c = position_parametric_t(params, kappa_in_t(profile), t, s0=s0, offset=offset)
            c.profile = profile
            return c
        # the quadrature walks along increasing theta; flip it onto the family's arc length
        c = position_parametric_t(params, kappa_in_t(profile), t, s0=-s0, offset=offset)
        r = slice(None, None, -1)
        return replace(c, s=-c.s[r], t=c.t[r], theta=c.theta[r], position=c.position[r],
                       T=-c.T[r], N=c.N[r], B=-c.B[r], kappa=c.kappa[r], tau=c.tau[r],
                       profile=profile, orientation=profile.orientation)
    if route == "natural":
        return position_natural(profile, params, grid,
                                offset=_closed_form_position(profile, float(grid[0])))
    return integrate_on_grid(profile, initial_state(profile, float(grid[0])), grid,
                             config or IntegratorConfig())
