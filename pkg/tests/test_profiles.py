import math

import numpy as np
import pytest

from slantix.errors import DomainError
from slantix.profiles import (AntiSalkowski, Branch, ConstantCurve, ConstantKappa,
                              ConstantPrecession, CosineKappa, Salkowski, Sign,
                              SlantFromKappa, SlantParameters, Tabulated, TabulatedKappa,
                              eval_kappa, eval_tau, f_of_theta, parse_ratio,
                              slant_tau_from_kappa, theta_of_s)

THIRD = SlantParameters(1 / 3)
HALF = SlantParameters(0.5)


class TestSlantParameters:
    @pytest.mark.parametrize("n", [1 / 3, 1 / 8, 10 / 11, 0.2, 2 / 3, 0.999])
    def test_identities(self, n):
        p = SlantParameters(n)
        assert p.m ** 2 * (1 - n * n) == pytest.approx(n * n, rel=1e-14)
        assert 1 / n == pytest.approx(math.sqrt(1 + p.m ** 2) / p.m, rel=1e-14)
        assert math.cos(p.phi) == pytest.approx(n, rel=1e-14)

    def test_m_for_one_third(self):
        assert THIRD.m == pytest.approx(1 / (2 * math.sqrt(2)), rel=1e-15)

    @pytest.mark.parametrize("n", [0.0, 1.0, -0.2, 1.5, math.nan])
    def test_rejects_out_of_range(self, n):
        with pytest.raises(DomainError):
            SlantParameters(n)

    def test_alternate_constructors_round_trip(self):
        p = SlantParameters.from_m(THIRD.m)
        assert p.n == pytest.approx(1 / 3, rel=1e-15)
        assert SlantParameters.from_angle(THIRD.phi).n == pytest.approx(1 / 3, rel=1e-15)

    def test_mirroring_rule(self):
        assert not SlantParameters(0.3).mirrored
        assert SlantParameters(0.3, sign="-").mirrored
        assert SlantParameters(0.3, branch="arccos", sign="-").mirrored is False
        assert SlantParameters(0.3, branch=Branch.ARCCOS).mirrored

    def test_sign_parse(self):
        assert Sign.parse("+") is Sign.PLUS
        assert Sign.parse("minus") is Sign.MINUS
        with pytest.raises(ValueError):
            Sign.parse("?")


def test_parse_ratio_is_exact_then_rounded_once():
    assert parse_ratio("1/3") == 1 / 3
    assert parse_ratio("10/11") == 10 / 11
    assert parse_ratio(" 0.25 ") == 0.25


class TestEvaluation:
    def test_salkowski_kappa(self):
        assert eval_kappa(Salkowski(THIRD), 0.4) == 1.0

    def test_constant_curve(self):
        assert eval_kappa(ConstantCurve(2.0, 0.0), 123.0) == 2.0

    def test_precession_kappa_at_zero(self):
        prof = ConstantPrecession(HALF.m, HALF)
        assert eval_kappa(prof, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_salkowski_tau(self):
        assert eval_tau(Salkowski(SlantParameters(0.7)), 0.0) == 0.0
        # m = 1/(2 sqrt 2): (1/(2 sqrt 2)) / sqrt(1 - 1/8)
        assert eval_tau(Salkowski(THIRD), 1.0) == pytest.approx(0.3779644730092272, rel=1e-14)

    def test_anti_salkowski_tau(self):
        assert eval_tau(AntiSalkowski(SlantParameters(0.2)), 0.7) == 1.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            eval_kappa(Salkowski(THIRD), 1 / THIRD.m)
        with pytest.raises(DomainError):
            eval_tau(AntiSalkowski(THIRD), -0.1)
        with pytest.raises(DomainError):
            eval_kappa(ConstantPrecession(1.0, THIRD), 2.0)


class TestTheta:
    def test_salkowski(self):
        assert theta_of_s(Salkowski(THIRD), 0.25) == 0.25

    def test_zero_for_anchored_families(self):
        for prof in (Salkowski(THIRD), ConstantPrecession(0.7, THIRD), ConstantCurve(3.0)):
            assert theta_of_s(prof, 0.0) == 0.0

    def test_precession_closed_form_matches_quadrature(self):
        prof = ConstantPrecession(HALF.m, HALF)
        expected = math.sqrt(3) * math.sin(1 / math.sqrt(3))
        assert theta_of_s(prof, 1.0) == pytest.approx(0.945363, abs=1e-6)
        assert theta_of_s(prof, 1.0) == pytest.approx(expected, rel=1e-14)
        s = np.linspace(-1.5, 1.5, 2001)
        tab = TabulatedKappa(s, prof.kappa(s))
        assert tab.theta(1.0) == pytest.approx(expected, abs=1e-8)

    def test_monotone(self):
        prof = SlantFromKappa(CosineKappa(0.9, THIRD.m), THIRD)
        s = np.linspace(-1.6, 1.6, 301)
        assert np.all(np.diff(prof.theta(s)) > 0)

    def test_anti_salkowski_convention(self):
        prof = AntiSalkowski(THIRD)
        s = np.array([0.5, 1.0, 2.0])
        assert np.allclose(prof.theta(s), np.sqrt(1 - (THIRD.m * s) ** 2) / THIRD.m)
        assert prof.orientation == -1


class TestSlantCondition:
    def test_constant_kappa_matches_salkowski(self):
        value = slant_tau_from_kappa(ConstantKappa(1.0), THIRD, 0.5)
        m = 1 / (2 * math.sqrt(2))
        assert value == pytest.approx(m * 0.5 / math.sqrt(1 - 0.25 / 8), rel=1e-14)
        assert value == pytest.approx(0.179605, abs=1e-6)
        assert value == pytest.approx(eval_tau(Salkowski(THIRD), 0.5), rel=1e-14)

    def test_zero_at_origin(self):
        assert slant_tau_from_kappa(CosineKappa(0.4, 2.0), SlantParameters(0.9), 0.0) == 0.0

    @pytest.mark.parametrize("n", [1 / 3, 0.5, 0.8])
    @pytest.mark.parametrize("mu_scale", [1.0, 0.6])
    def test_cosine_kappa_gives_precession(self, n, mu_scale):
        p = SlantParameters(n)
        mu = mu_scale * p.m
        s = np.linspace(-0.95, 0.95, 101) * 0.5 * math.pi / mu
        tau = slant_tau_from_kappa(CosineKappa(mu, p.m), p, s)
        assert np.allclose(tau, mu / p.m * np.sin(mu * s), rtol=0, atol=1e-12)
        assert np.allclose(tau, ConstantPrecession(mu, p).tau(s), atol=1e-12)

    def test_named_families_are_instances(self):
        s = np.linspace(-0.9, 0.9, 41) / THIRD.m
        assert np.allclose(SlantFromKappa(ConstantKappa(1.0), THIRD).tau(s),
                           Salkowski(THIRD).tau(s), atol=1e-12)
        minus = THIRD.replace(sign=Sign.MINUS)
        assert np.allclose(SlantFromKappa(ConstantKappa(1.0), minus).tau(s),
                           -Salkowski(THIRD).tau(s), atol=1e-12)


class TestRatio:
    def test_values(self):
        assert f_of_theta(THIRD, 0.0) == 0.0
        assert f_of_theta(THIRD, 1.0) == pytest.approx(0.3779644730092272, rel=1e-14)
        assert f_of_theta(THIRD.replace(sign="-"), 1.0) == pytest.approx(-0.3779644730092272, rel=1e-14)

    def test_guard_rejects_boundary(self):
        with pytest.raises(DomainError):
            f_of_theta(THIRD, 1 / THIRD.m)
        with pytest.raises(DomainError):
            f_of_theta(THIRD, (1 - 1e-13) / THIRD.m)

    @pytest.mark.parametrize("n", [0.2, 1 / 3, 0.75])
    def test_normalised_ratio_is_linear(self, n):
        # d/dtheta [f / sqrt(1 + f^2)] = m, by central differences
        p = SlantParameters(n)
        theta = np.linspace(-0.9, 0.9, 37) / p.m
        h = 1e-5
        g = lambda th: f_of_theta(p, th) / np.sqrt(1 + f_of_theta(p, th) ** 2)
        slope = (g(theta + h) - g(theta - h)) / (2 * h)
        assert np.allclose(slope, p.m, atol=1e-8)


class TestTabulated:
    def test_rejects_bad_rows(self):
        with pytest.raises(DomainError):
            Tabulated([0, 1, 1], [1, 1, 1], [0, 0, 0])
        with pytest.raises(DomainError):
            Tabulated([0, 1, 2], [1, -1, 1], [0, 0, 0])

    def test_matches_family_on_smooth_monotone_data(self):
        prof = ConstantPrecession(THIRD.m, THIRD)
        s = np.linspace(0.05, 1.4 / THIRD.m, 200)
        tab = Tabulated.from_profile(prof, s)
        q = np.linspace(s[0], s[-1], 3001)
        assert np.max(np.abs(tab.kappa(q) - prof.kappa(q))) < 1e-6
        assert np.max(np.abs(tab.tau(q) - prof.tau(q))) < 1e-6

    def test_salkowski_table(self):
        prof = Salkowski(THIRD)
        s = np.linspace(-0.5, 0.5, 200) / THIRD.m
        tab = Tabulated.from_profile(prof, s)
        q = np.linspace(s[0], s[-1], 3001)
        assert np.max(np.abs(tab.kappa(q) - 1.0)) == 0.0
        assert np.max(np.abs(tab.tau(q) - prof.tau(q))) < 1e-6
        assert np.max(np.abs(tab.theta(q) - q)) < 1e-9

    def test_closed_range(self):
        tab = Tabulated([0.0, 1.0, 2.0], [1.0, 2.0, 1.5], [0.0, 0.1, 0.2])
        assert tab.kappa(2.0) == pytest.approx(1.5)
        with pytest.raises(DomainError):
            tab.kappa(2.0001)

    def test_from_csv(self, tmp_path):
        path = tmp_path / "table.csv"
        path.write_text("s,kappa,tau\n0,1,0\n0.5,1.2,0.1\n1,1.1,0.3\n")
        tab = Tabulated.from_csv(path)
        assert tab.kappa(0.5) == pytest.approx(1.2)
        bad = tmp_path / "bad.csv"
        bad.write_text("s,k\n0,1\n")
        with pytest.raises(ValueError):
            Tabulated.from_csv(bad)
