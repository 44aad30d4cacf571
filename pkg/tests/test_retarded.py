import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq

from lwgauge.errors import ObserverOnCharge
from lwgauge.retarded import (default_bracket, dtret_dt, grad_tret, light_ray_time, residual,
                              solve_retarded)
from lwgauge.trajectory import Trajectory

from strategies import observers, trajectories


def test_static_example():
    sol = solve_retarded(Trajectory.static(), 20.0, (0, 0, 10))
    assert sol.t_ret == pytest.approx(10.0, abs=1e-13)


def test_uniform_head_on_example():
    sol = solve_retarded(Trajectory.uniform(0.5, 1), 0.0, (100, 0, 0))
    assert sol.t_ret == pytest.approx(-200.0, rel=1e-14)


def test_oscillatory_example_against_brentq():
    # a = omega = c = 1 sits on the speed bound; omega is nudged below it
    tr = Trajectory.oscillatory(1.0, 0.99)
    f = lambda s: 60.0 - s - math.sqrt(math.sin(0.99 * s) ** 2 + 2500.0)
    ref = brentq(f, 0.0, 60.0, xtol=1e-14, rtol=1e-15)
    sol = solve_retarded(tr, 60.0, (0, 0, 50))
    assert sol.t_ret == pytest.approx(ref, abs=1e-12)
    assert abs(sol.residual) < 1e-12


def test_dtret_dt_examples():
    assert dtret_dt(Trajectory.static(), 3.0, (1, 2, 3)) == 1.0
    assert dtret_dt(Trajectory.uniform(0.5), -200.0, (100, 0, 0)) == pytest.approx(2.0)


def test_grad_tret_examples():
    assert np.allclose(grad_tret(Trajectory.static(), 10.0, (0, 0, 10)), [0, 0, -1])
    assert np.allclose(grad_tret(Trajectory.uniform(0.5), -200.0, (100, 0, 0)), [-2, 0, 0])


def test_oscillatory_dtret_dt_finite_difference():
    tr = Trajectory.oscillatory(0.5, 1.0)
    r = np.array([5.0, 4.0, 0.0])
    t = light_ray_time(tr, 0.3, r)
    h = 1e-5
    fd = (solve_retarded(tr, t + h, r).t_ret - solve_retarded(tr, t - h, r).t_ret) / (2 * h)
    assert fd == pytest.approx(dtret_dt(tr, 0.3, r), rel=1e-6)


def test_observer_on_charge():
    tr = Trajectory.uniform(0.5)
    with pytest.raises(ObserverOnCharge):
        dtret_dt(tr, 2.0, (1.0, 0.0, 0.0))


@given(trajectories(), observers(), st.floats(-100, 100))
def test_causality_and_tolerance(tr, r, t):
    sol = solve_retarded(tr, t, r)
    dist = np.linalg.norm(r - tr.position(sol.t_ret))
    assert abs(tr.c * (t - sol.t_ret) - dist) <= 1e-12 * max(1.0, t - sol.t_ret) * tr.c + 1e-12
    assert sol.t_ret < t
    assert abs(residual(tr, t, sol.t_ret, r)) <= 1e-12 * max(1.0, t - sol.t_ret)


@given(trajectories(), observers(), st.floats(-100, 100), st.floats(1.0, 50.0))
def test_uniqueness_from_two_brackets(tr, r, t, widen):
    lo, hi = default_bracket(tr, t, r)
    a = solve_retarded(tr, t, r).t_ret
    b = solve_retarded(tr, t, r, bracket=(lo - widen * (hi - lo), hi)).t_ret
    assert a == pytest.approx(b, abs=1e-11 * max(1.0, abs(a)))


@given(trajectories(), observers(), st.floats(-30, 30))
def test_retarded_identities_finite_difference(tr, r, t):
    tret = solve_retarded(tr, t, r).t_ret
    h = 1e-5 * max(1.0, abs(t))
    fd = (solve_retarded(tr, t + h, r).t_ret - solve_retarded(tr, t - h, r).t_ret) / (2 * h)
    assert fd == pytest.approx(dtret_dt(tr, tret, r), rel=1e-6)
    hr = 1e-5 * np.linalg.norm(r)
    g = np.array([(solve_retarded(tr, t, r + hr * ei).t_ret - solve_retarded(tr, t, r - hr * ei).t_ret)
                  / (2 * hr) for ei in np.eye(3)])
    an = grad_tret(tr, tret, r)
    assert np.linalg.norm(g - an) <= 1e-6 * np.linalg.norm(an)


@given(trajectories(), observers(), st.floats(-30, 30))
def test_dtret_dt_positive_and_bounded(tr, r, t):
    k = dtret_dt(tr, t, r)
    beta = tr.max_speed_ratio()
    assert 1 / (1 + beta) - 1e-14 <= k <= 1 / (1 - beta) + 1e-12


@given(trajectories(), observers(), st.floats(-30, 30))
def test_light_ray_time_round_trip(tr, r, t_ret):
    t = light_ray_time(tr, t_ret, r)
    assert solve_retarded(tr, t, r).t_ret == pytest.approx(t_ret, abs=1e-10 * max(1.0, t - t_ret))
