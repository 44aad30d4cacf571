import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from lwgauge.errors import NonConvergence
from lwgauge.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, integrate


def test_rule_exactness():
    # 15-point Kronrod is exact to degree 23, the embedded 7-point Gauss to 13
    for deg in range(24):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert float(KRONROD_WEIGHTS @ NODES**deg) == pytest.approx(exact, abs=1e-14)
    for deg in range(14):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert float(GAUSS_WEIGHTS @ NODES**deg) == pytest.approx(exact, abs=1e-14)


def test_smooth_scalar():
    res = integrate(np.exp, 0.0, 1.0)
    assert res.value == pytest.approx(math.e - 1, rel=1e-14)
    assert res.abs_error >= 0


def test_vector_valued():
    res = integrate(lambda t: np.stack([np.sin(t), np.cos(t), t], axis=-1), 0.0, math.pi)
    assert np.allclose(res.value, [2.0, 0.0, math.pi**2 / 2], atol=1e-13)


def test_peaked_integrand_against_scipy():
    f = lambda t: 1.0 / (1e-4 + (t - 0.3) ** 2)
    ref, _ = quad(f, 0, 1, points=[0.3], epsabs=0, epsrel=1e-13, limit=500)
    assert integrate(f, 0, 1, epsrel=1e-13).value == pytest.approx(ref, rel=1e-11)


def test_oscillatory_many_panels():
    res = integrate(lambda t: np.sin(t) ** 2, 0.0, 200 * math.pi, n_panels=400)
    assert res.value == pytest.approx(100 * math.pi, rel=1e-13)


def test_breakpoints_and_reversed_interval():
    f = lambda t: np.abs(t - 0.25)
    assert integrate(f, 0, 1, breakpoints=[0.25]).value == pytest.approx(0.3125, rel=1e-14)
    assert integrate(np.exp, 1.0, 0.0).value == pytest.approx(-(math.e - 1), rel=1e-14)


def test_zero_length():
    assert integrate(np.exp, 2.0, 2.0).value == 0.0


def test_nonconvergence_is_raised():
    with pytest.raises(NonConvergence):
        integrate(lambda t: 1.0 / np.sqrt(np.abs(t - 0.5) + 1e-300), 0, 1, epsrel=1e-15, max_panels=64)


def test_deterministic():
    f = lambda t: np.cos(40 * t) / (1 + t * t)
    assert integrate(f, 0, 10).value == integrate(f, 0, 10).value


@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.1, 3))
def test_additivity(a, length, split):
    f = lambda t: np.exp(-0.1 * t) * np.sin(3 * t)
    b, m = a + length, a + length * split / 3.1
    whole = integrate(f, a, b, epsrel=1e-14).value
    parts = integrate(f, a, m, epsrel=1e-14).value + integrate(f, m, b, epsrel=1e-14).value
    assert whole == pytest.approx(parts, abs=1e-13)
