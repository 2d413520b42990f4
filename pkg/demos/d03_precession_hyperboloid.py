"""
Constant precession and its hyperboloid
=======================================

With kappa = (mu/m) cos(mu s) and tau = (mu/m) sin(mu s) the Darboux vector
has constant length mu/m, and for mu = m the curve lies on the hyperboloid
x^2 + y^2 - m^2 z^2 = 4 m^2.
"""

import numpy as np

from slantix import SlantParameters
from slantix.synthesis import sample_constant_precession
from slantix.verify import darboux_checks

for n in (4 / 5, 1 / 2, 1 / 3):
    p = SlantParameters(n)
    c = sample_constant_precession(p.m, p, np.linspace(-1.2, 1.2, 2001) / p.m)
    norm, hyper = darboux_checks(c)
    x, y, z = c.position.T
    lhs = x * x + y * y - p.m ** 2 * z * z
    print(f"n = {n:.3f}: 4 m^2 = {4 * p.m ** 2:.6f}, x^2+y^2-m^2 z^2 in "
          f"[{lhs.min():.12f}, {lhs.max():.12f}]")
    print(f"          {norm.line()}")
    print(f"          {hyper.line()}")
