import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lwgauge import closed_forms as cf
from lwgauge.asymptotics import richardson_coefficient, sweep
from lwgauge.errors import ValidationError
from lwgauge.trajectory import Trajectory

Z = (0.0, 0.0, 1.0)


def unit_vectors():
    return st.tuples(st.floats(-0.99, 0.99), st.floats(0, 2 * math.pi)).map(
        lambda p: (p[0], math.sqrt(1 - p[0] ** 2) * math.cos(p[1]), math.sqrt(1 - p[0] ** 2) * math.sin(p[1])))


def test_uniform_examples():
    assert cf.uniform_ac_leading(1, 0.5, 1, Z).coeff[0] == pytest.approx(0.288854, abs=1e-6)
    assert cf.uniform_ac_leading(1, 0.5, 1, (0, 1, 0)).coeff[1] == pytest.approx(-0.105573, abs=1e-6)
    assert cf.uniform_delta_leading(1, 0.5, 1, Z).coeff[0] == pytest.approx(-0.211146, abs=1e-6)
    lo = cf.uniform_ac_leading(1, 0.5, 1, Z)
    assert lo.power == -1 and lo.case_id == cf.Case.UNIFORM_AC


@pytest.mark.parametrize("fn", [cf.uniform_ac_leading, cf.uniform_delta_leading])
def test_uniform_static_limit(fn):
    assert np.max(np.abs(fn(1, 1e-7, 1, (0.6, 0.0, 0.8)).coeff)) < 1e-6


def test_uniform_same_order_ratio():
    ratios = []
    for beta in np.linspace(0.05, 0.95, 10):
        for th in np.linspace(0.1, 3.0, 12):
            e = (math.cos(th), 0.0, math.sin(th))
            for eps in (1, -1):
                ac = cf.uniform_ac_leading(1, beta, eps, e).coeff
                dl = cf.uniform_delta_leading(1, beta, eps, e).coeff
                ratios.append(np.linalg.norm(dl) / np.linalg.norm(ac))
    assert 0.25 <= min(ratios) and max(ratios) <= 4.0


@given(st.floats(0.05, 0.95), unit_vectors())
def test_reflection_symmetry(beta, e):
    mirrored = (-e[0], e[1], e[2])
    for fn in (cf.uniform_ac_leading, cf.uniform_delta_leading):
        a, b = fn(1, beta, 1, e).coeff, fn(1, beta, -1, mirrored).coeff
        assert a[0] == pytest.approx(-b[0], rel=1e-12, abs=1e-15)
        assert np.allclose(a[1:], b[1:], rtol=1e-12, atol=1e-15)


def test_printed_radical_breaks_reflection_symmetry():
    e, m = (0.3, 0.4, math.sqrt(0.75)), (-0.3, 0.4, math.sqrt(0.75))
    a = cf.uniform_ac_leading(1, 0.4, 1, e, "printed").coeff[0]
    b = cf.uniform_ac_leading(1, 0.4, -1, m, "printed").coeff[0]
    assert abs(a + b) > 1e-2


def test_osc_ac_examples():
    # a = omega = c = 1 violates the strict speed bound; a = 0.5 keeps the arithmetic simple
    assert np.allclose(cf.osc_ac_leading(1, 0.5, 1, 1, math.pi / 2, Z).coeff, 0, atol=1e-16)
    assert cf.osc_ac_leading(1, 0.5, 1, 1, 0.0, Z, "printed").coeff[0] == pytest.approx(-0.5)
    assert cf.osc_ac_leading(1, 0.5, 1, 1, 0.0, Z, "corrected").coeff[0] == pytest.approx(0.5)
    assert cf.osc_ac_leading(1, 0.5, 1, 1, 0.0, (1, 0, 0)).coeff[0] == 0.0
    with pytest.raises(ValidationError):
        cf.osc_ac_leading(1, 1, 1, 1, 0.0, Z)


def test_osc_delta_examples():
    lo = cf.osc_delta_leading(1, 0.5, (1, 0, 0), math.pi / 2, 1.0, "printed")
    assert lo.power == -2 and lo.coeff[0] == pytest.approx(-1.0)
    assert np.allclose(cf.osc_delta_leading(1, 0.5, (1, 0, 0), math.pi / 2, 1.0).coeff, [-1, 0, 0])
    assert np.array_equal(cf.osc_delta_leading(1, 0.5, Z, math.pi / 2, 1.0, "printed").coeff, np.zeros(3))
    assert np.allclose(cf.osc_delta_leading(1, 0.5, (0.6, 0, 0.8), 0.0, 1.0).coeff, 0.0)


def extrapolate(traj, t_ret, e, column, power):
    sw = sweep(traj, t_ret, e, 1e3, 2.0, 10)
    return richardson_coefficient(sw.column(column), sw.radii, power)


@pytest.mark.parametrize("e", [(0.6, 0.0, 0.8), (-0.3, 0.4, math.sqrt(0.75))])
def test_osc_delta_variant_against_numerics(e):
    tr, t_ret = Trajectory.oscillatory(0.5, 1.0), 1.1
    for i, col in enumerate(("dAx", "dAy", "dAz")):
        want = cf.osc_delta_leading(1, 0.5, e, t_ret, 1.0).coeff[i]
        if abs(want) > 1e-3:
            assert extrapolate(tr, t_ret, e, col, -2) == pytest.approx(want, rel=1e-2)


def test_osc_delta_nonzero_off_axis_where_printed_vanishes():
    got = extrapolate(Trajectory.oscillatory(0.5, 1.0), math.pi / 2, Z, "dAx", -2)
    assert got == pytest.approx(0.5, rel=1e-2)


def test_osc_ac_variant_against_numerics():
    tr, e, t_ret = Trajectory.oscillatory(0.5, 1.2), (0.6, 0.0, 0.8), 0.4
    want = cf.osc_ac_leading(1, 0.5, 1.2, 1.0, t_ret, e).coeff
    for i, col in ((0, "ACx"), (2, "ACz")):
        assert extrapolate(tr, t_ret, e, col, -1) == pytest.approx(want[i], rel=1e-2)


def test_combined_reduces_to_uniform():
    a = cf.combined_ac_leading(1, 0.4, -1, 0.0, 1.0, 1.0, 0.3, (0.6, 0, 0.8)).coeff
    b = cf.uniform_ac_leading(1, 0.4, -1, (0.6, 0, 0.8)).coeff
    assert np.array_equal(a, b)


def test_combined_small_beta_matches_corrected_oscillation():
    e = (0.6, 0.0, 0.8)
    a = cf.combined_ac_leading(1, 1e-9, 1, 0.3, 1.0, 1.0, 0.2, e).coeff
    b = cf.osc_ac_leading(1, 0.3, 1.0, 1.0, 0.2, e, "corrected").coeff
    assert np.allclose(a, b, atol=1e-7)


def test_combined_example_against_sweep():
    q, beta, a, omega, t_ret = 1.0, 0.3, 0.2, 1.0, 0.0
    lo = cf.combined_ac_leading(q, beta, 1, a, omega, 1.0, t_ret, Z)
    assert lo.coeff[0] == pytest.approx(cf.uniform_ac_leading(q, beta, 1, Z).coeff[0] + q * a * omega)
    got = extrapolate(Trajectory.combined(beta, a, omega, 1), t_ret, Z, "ACx", -1)
    assert got == pytest.approx(lo.coeff[0], rel=1e-2)


def test_combined_denominator_sign():
    tr, e, t_ret = Trajectory.combined(0.3, 0.3, 1.0, 1), (0.6, 0.0, 0.8), 0.2
    got = extrapolate(tr, t_ret, e, "ACx", -1)
    printed = cf.combined_ac_leading(1, 0.3, 1, 0.3, 1.0, 1.0, t_ret, e).coeff[0]
    flipped = cf.combined_ac_leading(1, 0.3, 1, 0.3, 1.0, 1.0, t_ret, e, denominator_sign="flipped").coeff[0]
    assert got == pytest.approx(printed, rel=1e-3)
    assert abs(got - flipped) > 1e-2 * abs(got)


def test_uniform_radical_variant_for_backward_motion():
    tr, e = Trajectory.uniform(0.5, -1), (0.6, 0.0, 0.8)
    got = extrapolate(tr, 0.0, e, "ACx", -1)
    assert got == pytest.approx(cf.uniform_ac_leading(1, 0.5, -1, e).coeff[0], rel=1e-3)
    assert abs(got - cf.uniform_ac_leading(1, 0.5, -1, e, "printed").coeff[0]) > 1e-2 * abs(got)


def test_combined_delta_equals_uniform():
    e = (0.6, 0.0, 0.8)
    got = extrapolate(Trajectory.combined(0.5, 0.2, 1.0, 1), 0.3, e, "dAz", -1)
    assert got == pytest.approx(cf.combined_delta_leading(1, 0.5, 1, e).coeff[2], rel=1e-2)


def test_series_examples():
    assert cf.series_integrand(1, 1, 1.0, math.pi / 2, 10) == pytest.approx(1.23)
    assert cf.exact_integrand(1, 1, 1.0, math.pi / 2, 10) == pytest.approx(0.9 / 0.81**1.5)
    assert cf.series_integrand(1, 1, 0.0, 0.0, 10) == 0.0


@given(st.floats(0, 2 * math.pi), st.floats(-0.95, 0.95))
def test_series_truncation_is_third_order(tp, ex):
    err = [abs(cf.exact_integrand(1, 1, ex, tp, r) - cf.series_integrand(1, 1, ex, tp, r))
           for r in (200.0, 400.0)]
    # error = c3 s^3 / r^3 + O(r^-4), with |c3| bounded by 10 for a = 1
    assert err[1] <= 10 / 400.0**3
    if err[0] > 1e-12:
        assert err[0] / err[1] == pytest.approx(8, rel=0.2) or err[0] < 1e-9


def test_printed_series_is_only_second_order_off_axis():
    err = [abs(cf.exact_integrand(1, 1, 0.3, 1.0, r) - cf.series_integrand(1, 1, 0.3, 1.0, r, "printed"))
           for r in (200.0, 400.0)]
    assert err[0] / err[1] == pytest.approx(4, rel=0.05)
