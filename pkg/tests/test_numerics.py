import math

import numpy as np
import pytest

from slantix.errors import QuadratureError
from slantix.interpolation import MonotoneCubic, fritsch_carlson_slopes
from slantix.quadrature import adaptive_simpson, cumulative_simpson


class TestQuadrature:
    def test_polynomial_exact(self):
        assert adaptive_simpson(lambda x: x ** 3 - 2 * x, 0.0, 2.0) == pytest.approx(0.0, abs=1e-14)

    def test_cumulative_matches_antiderivative(self):
        grid = np.linspace(0.0, 3.0, 31)
        acc = cumulative_simpson(np.cos, grid)
        assert acc[0] == 0.0
        assert np.max(np.abs(acc - np.sin(grid))) < 1e-10

    def test_vector_valued(self):
        grid = np.linspace(-1.0, 1.0, 11)
        acc = cumulative_simpson(lambda u: np.column_stack([np.exp(u), u * u]), grid)
        assert acc.shape == (11, 2)
        assert np.allclose(acc[:, 0], np.exp(grid) - np.exp(-1.0), atol=1e-10)
        assert np.allclose(acc[:, 1], (grid ** 3 + 1) / 3, atol=1e-12)

    def test_sharp_integrand_refines(self):
        # near-singular but integrable: int_0^0.999 1/sqrt(1-x^2) = arcsin(0.999)
        value = adaptive_simpson(lambda x: 1 / np.sqrt(1 - x * x), 0.0, 0.999)
        assert value == pytest.approx(math.asin(0.999), abs=1e-9)

    def test_non_finite_raises(self):
        with pytest.raises(QuadratureError), np.errstate(divide="ignore"):
            cumulative_simpson(lambda x: 1 / x, np.array([-1.0, 1.0]))

    def test_interval_cap(self):
        with pytest.raises(QuadratureError):
            cumulative_simpson(lambda x: np.sin(1 / (x + 1e-3)), np.array([0.0, 1.0]),
                               tol=1e-14, max_intervals=64)


class TestMonotoneCubic:
    def test_interpolates_nodes(self):
        x = np.array([0.0, 0.5, 1.5, 2.0])
        y = np.array([1.0, 2.0, 2.5, 4.0])
        f = MonotoneCubic(x, y)
        assert np.allclose(f(x), y)

    def test_preserves_monotonicity(self):
        x = np.arange(6.0)
        y = np.array([0.0, 0.0, 0.1, 5.0, 5.0, 5.1])
        u = np.linspace(0, 5, 2001)
        assert np.all(np.diff(MonotoneCubic(x, y)(u)) >= -1e-14)

    def test_positive_data_stays_positive(self):
        x = np.arange(5.0)
        y = np.array([5.0, 0.01, 0.01, 4.0, 0.02])
        assert np.all(MonotoneCubic(x, y)(np.linspace(0, 4, 4001)) > 0)

    def test_extremum_gets_zero_slope(self):
        d = fritsch_carlson_slopes(np.arange(3.0), np.array([0.0, 1.0, 0.0]))
        assert d[1] == 0.0

    def test_third_order_on_smooth_monotone_data(self):
        # three-point slopes are O(h^2), so the interpolant is O(h^3)
        u = np.linspace(0.0, 1.0, 20001)
        errs = []
        for count in (51, 101, 201):
            x = np.linspace(0.0, 1.0, count)
            errs.append(np.max(np.abs(MonotoneCubic(x, np.exp(x))(u) - np.exp(u))))
        assert errs[-1] < 5e-8
        assert all(a / b > 7.0 for a, b in zip(errs, errs[1:]))

    def test_outside_range(self):
        with pytest.raises(ValueError):
            MonotoneCubic([0.0, 1.0], [1.0, 2.0])(1.5)

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            MonotoneCubic([0.0, 2.0, 1.0], [1.0, 2.0, 3.0])
