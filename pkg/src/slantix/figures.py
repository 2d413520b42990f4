"""Parameter sets and sampling grids for the three figure families.

Grids are given as a range of ``n t`` (Salkowski, anti-Salkowski) or
``mu s`` (constant precession, with ``mu = m``), 2001 samples each.  The
ranges keep clear of the points where torsion or curvature diverge.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .families import build_curve, make_profile, t_to_s
from .profiles import SlantParameters

SAMPLES = 2001


@dataclass(frozen=True)
class SubFigure:
    figure: int
    family: str
    n: Fraction
    lo: float  # n*t (or mu*s) at the first sample
    hi: float
    count: int = SAMPLES

    @property
    def params(self):
        return SlantParameters(float(self.n))

    @property
    def mu(self):
        return self.params.m if self.family == "precession" else None

    @property
    def label(self):
        return f"fig{self.figure}_{self.family}_n{self.n.numerator}-{self.n.denominator}"

    def grid(self):
        """Samples in the closed form's own parameter (t, or s for precession)."""
        scale = self.mu if self.family == "precession" else self.params.n
        return np.linspace(self.lo / scale, self.hi / scale, self.count)

    def build(self, route="closed-form", config=None):
        grid = self.grid()
        if route in ("natural", "oracle") and self.family != "precession":
            s = np.sort(t_to_s(make_profile(self.family, self.params), grid))
            grid = np.linspace(s[0], s[-1], self.count)
        return build_curve(self.family, grid, route, self.params, self.mu, config)


FIGURES = {
    1: (SubFigure(1, "salkowski", Fraction(1, 3), -0.4, 0.4),
        SubFigure(1, "salkowski", Fraction(1, 8), -0.3, 0.3),
        SubFigure(1, "salkowski", Fraction(10, 11), -1.35, 1.35)),
    2: (SubFigure(2, "anti-salkowski", Fraction(1, 5), 0.12, 1.5),
        SubFigure(2, "anti-salkowski", Fraction(1, 13), 0.5, 1.1),
        SubFigure(2, "anti-salkowski", Fraction(2, 3), 0.12, 1.5)),
    3: (SubFigure(3, "precession", Fraction(4, 5), -1.2, 1.2),
        SubFigure(3, "precession", Fraction(1, 2), -1.2, 1.2),
        SubFigure(3, "precession", Fraction(1, 3), -1.2, 1.2)),
}


def subfigures(which=None):
    if which is None:
        return [sf for key in sorted(FIGURES) for sf in FIGURES[key]]
    if which not in FIGURES:
        raise ValueError(f"figure must be one of {sorted(FIGURES)}")
    return list(FIGURES[which])


def max_salkowski_span(n):
    """Longest arc-length span available to a Salkowski curve: 2/m."""
    return 2.0 / SlantParameters(float(n)).m

