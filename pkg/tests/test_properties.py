"""Property-based checks of the geometric invariants."""

import math

import numpy as np
from hypothesis import given, settings, strategies as st

from slantix.oracle import IntegratorConfig, InitialState, integrate_frenet
from slantix.curves import FrenetFrame
from slantix.profiles import ConstantCurve, SlantParameters, f_of_theta
from slantix.synthesis import (frame_at_theta, normal_vector, salkowski_curve, tangent_vector,
                               t_of_theta, theta_of_t)

ns = st.floats(0.05, 0.95).filter(lambda n: abs(n - 0.5) > 1e-3)
fractions = st.floats(-0.98, 0.98)
signs = st.sampled_from(["+", "-"])
branches = st.sampled_from(["arcsin", "arccos"])


@given(ns, fractions, signs, branches)
def test_normal_keeps_slant_angle(n, frac, sign, branch):
    p = SlantParameters(n, branch=branch, sign=sign)
    N = normal_vector(p, frac / p.m)
    assert abs(np.linalg.norm(N) - 1) < 1e-14
    assert abs(N[2] - n) < 1e-14


@given(ns, fractions, signs, branches)
def test_frame_is_right_handed_and_orthonormal(n, frac, sign, branch):
    p = SlantParameters(n, branch=branch, sign=sign)
    f = frame_at_theta(p, frac / p.m)
    assert f.defect < 1e-13
    assert np.allclose(np.cross(f.T, f.N), f.B, atol=1e-13)


@given(ns, fractions, branches)
def test_theta_t_round_trip(n, frac, branch):
    p = SlantParameters(n, branch=branch)
    theta = frac / p.m
    assert math.isclose(theta_of_t(p, t_of_theta(p, theta)), theta, rel_tol=1e-12, abs_tol=1e-12)


@given(ns, fractions, signs)
def test_torsion_ratio_from_frame(n, frac, sign):
    # dN/dtheta = -T + f B, so f = <dN/dtheta, B>
    p = SlantParameters(n, sign=sign)
    theta, h = frac / p.m * 0.99, 1e-6
    dN = (normal_vector(p, theta + h) - normal_vector(p, theta - h)) / (2 * h)
    f = frame_at_theta(p, theta)
    assert np.allclose(dN, -f.T + f_of_theta(p, theta) * f.B, atol=1e-6 * (1 + abs(f_of_theta(p, theta))))


@given(ns, st.floats(0.0, 1.4))
def test_salkowski_mirror_symmetry(n, nt):
    p = SlantParameters(n)
    t = nt / n
    a, b = salkowski_curve(p, t), salkowski_curve(p, -t)
    assert np.allclose(a * [1, -1, 1], b, atol=1e-12)


@given(ns, fractions)
def test_sign_flip_is_a_reflection(n, frac):
    plus, minus = SlantParameters(n), SlantParameters(n, sign="-")
    theta = frac / plus.m
    assert np.allclose(tangent_vector(plus, theta) * [1, -1, 1], tangent_vector(minus, theta))


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(-3.0, 3.0))
def test_oracle_keeps_constant_helix_radius(kappa, tau):
    E = np.eye(3)
    init = InitialState(np.zeros(3), FrenetFrame(E[0], E[1], E[2]))
    c = integrate_frenet(ConstantCurve(kappa, tau), init, 2.0, IntegratorConfig(2e-3))
    w2 = kappa * kappa + tau * tau
    axis = np.array([tau, 0.0, kappa]) / math.sqrt(w2)
    radial = c.position - np.outer(c.position @ axis, axis)
    dist = np.linalg.norm(radial - kappa / w2 * E[1], axis=1)
    assert np.allclose(dist, kappa / w2, atol=1e-8)
