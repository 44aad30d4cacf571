"""Acceptance checks shared by the test suite and ``lwgauge verify``.

Every check returns a list of :class:`SubCheck` rows; the runner adds timing
and compares it with the check's runtime budget.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import closed_forms as cf
from .asymptotics import fit_power_law, richardson_coefficient, sweep
from .coulomb import delta_a_by_definition, evaluate
from .grid import (curl_test_field, divergence_reduction, gradient_test_field, mixed_test_field,
                   proper_projection)
from .retarded import dtret_dt, grad_tret, light_ray_time, solve_retarded
from .tail import (adaptive_integral, difference_trick, period_chunked, residual_integrand,
                   uniform_closed_form)
from .trajectory import Trajectory

SEED = 20240611


@dataclass(frozen=True)
class SubCheck:
    label: str
    passed: bool
    detail: str


@dataclass
class CheckResult:
    key: str
    title: str
    subchecks: list[SubCheck]
    runtime: float
    budget: float
    error: str | None = None

    @property
    def passed(self) -> bool:
        return (self.error is None and self.runtime <= self.budget
                and all(s.passed for s in self.subchecks))

    def lines(self):
        flag = "PASS" if self.passed else "FAIL"
        yield f"[{flag}] {self.key} {self.title} ({self.runtime:.2f} s, budget {self.budget:g} s)"
        if self.error:
            yield f"    error: {self.error}"
        for s in self.subchecks:
            yield f"    [{'ok' if s.passed else 'XX'}] {s.label}: {s.detail}"


@dataclass(frozen=True)
class Check:
    key: str
    title: str
    func: Callable[[], list[SubCheck]]
    budget: float


def _rel(got, want):
    return abs(got - want) / abs(want)


def _within(label, got, lo, hi):
    return SubCheck(label, lo <= got <= hi, f"{got:+.5f} in [{lo:+.3f}, {hi:+.3f}]")


def _coeff(label, got, want, rtol):
    err = _rel(got, want)
    return SubCheck(label, err <= rtol, f"{got:+.6f} vs {want:+.6f} (rel {err:.2e}, tol {rtol:g})")


def _random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


# ----------------------------------------------------------------------- 1
def static_null() -> list[SubCheck]:
    rng = np.random.default_rng(SEED)
    traj = Trajectory.static()
    worst_c = worst_d = 0.0
    for _ in range(100):
        r = _random_unit(rng) * rng.uniform(0.5, 100.0)
        t = rng.uniform(-50.0, 50.0)
        s = evaluate(traj, t, r)
        worst_c = max(worst_c, float(np.max(np.abs(s.a_C))))
        worst_d = max(worst_d, float(np.max(np.abs(s.delta_A))))
    return [SubCheck("max |A_C| over 100 events", worst_c <= 1e-12, f"{worst_c:.2e} <= 1e-12"),
            SubCheck("max |Delta[A]| over 100 events", worst_d <= 1e-12, f"{worst_d:.2e} <= 1e-12")]


# ----------------------------------------------------------------------- 2
def uniform_same_order() -> list[SubCheck]:
    traj = Trajectory.uniform(0.5, 1)
    e = (0.0, 0.0, 1.0)
    sw = sweep(traj, 0.0, e, 1e3, 2.0, 12)
    ac, dl = sw.column("ACx"), sw.column("dAx")
    out = [_within("A_C^x exponent", fit_power_law(ac, sw.radii).exponent, -1.05, -0.95),
           _within("Delta^x exponent", fit_power_law(dl, sw.radii).exponent, -1.05, -0.95)]
    want_ac = cf.uniform_ac_leading(1.0, 0.5, 1, e).coeff[0]
    want_dl = cf.uniform_delta_leading(1.0, 0.5, 1, e).coeff[0]
    out.append(SubCheck("closed-form arithmetic", abs(want_ac - 0.288854) < 1e-6
                        and abs(want_dl + 0.211146) < 1e-6, f"{want_ac:+.6f}, {want_dl:+.6f}"))
    out.append(_coeff("A_C^x coefficient", richardson_coefficient(ac, sw.radii, -1), 0.288854, 0.01))
    out.append(_coeff("Delta^x coefficient", richardson_coefficient(dl, sw.radii, -1), -0.211146, 0.01))
    return out


# ----------------------------------------------------------------------- 3
def oscillatory_higher_order() -> list[SubCheck]:
    q, a, omega, c = 1.0, 0.5, 1.0, 1.0
    traj = Trajectory.oscillatory(a, omega, c)
    sw = sweep(traj, 0.0, (0.0, 0.0, 1.0), 1e3, 2.0, 12)
    ac = sw.column("ACx")
    got = richardson_coefficient(ac, sw.radii, -1)
    printed = cf.osc_ac_leading(q, a, omega, c, 0.0, (0.0, 0.0, 1.0), "printed").coeff[0]
    corrected = cf.osc_ac_leading(q, a, omega, c, 0.0, (0.0, 0.0, 1.0), "corrected").coeff[0]
    out = [_within("A_C^x exponent (e_x=0)", fit_power_law(ac, sw.radii).exponent, -1.05, -0.95),
           _coeff("A_C^x coefficient vs -q a omega cos/c", got, printed, 0.01),
           SubCheck("info: same coefficient vs +q a omega cos/c", True,
                    f"rel {_rel(got, corrected):.2e}")]

    sw2 = sweep(traj, math.pi / 2, (1.0, 0.0, 0.0), 1e3, 2.0, 12)
    dl = sw2.column("dAx")
    want = cf.osc_delta_leading(q, a, (1.0, 0.0, 0.0), math.pi / 2, omega, "printed").coeff[0]
    out.append(_within("Delta^x exponent (e_x=1)", fit_power_law(dl, sw2.radii).exponent, -2.1, -1.9))
    out.append(_coeff("Delta^x r^2 coefficient vs -2 q a", richardson_coefficient(dl, sw2.radii, -2),
                      want, 0.02))
    return out


# ----------------------------------------------------------------------- 4
def combined_same_order() -> list[SubCheck]:
    q, v, eps, a, omega, c, t_ret = 1.0, 0.5, -1, 0.2, 1.0, 1.0, 0.7
    e = (0.6, 0.0, 0.8)
    traj = Trajectory.combined(v, a, omega, eps, c)
    sw = sweep(traj, t_ret, e, 1e3, 2.0, 12)
    uni = cf.uniform_delta_leading(q, v / c, eps, e).coeff
    out = []
    for i, name in ((0, "x"), (2, "z")):
        col = sw.column("dA" + name)
        out.append(_within(f"Delta^{name} exponent", fit_power_law(col, sw.radii).exponent, -1.05, -0.95))
        out.append(_coeff(f"Delta^{name} coefficient vs uniform motion",
                          richardson_coefficient(col, sw.radii, -1), uni[i], 0.02))
    want = cf.combined_ac_leading(q, v / c, eps, a, omega, c, t_ret, e).coeff[0]
    out.append(_coeff("A_C^x coefficient", richardson_coefficient(sw.column("ACx"), sw.radii, -1),
                      want, 0.02))
    return out


# ----------------------------------------------------------------------- 5
def _event_trajectories():
    return [Trajectory.static(), Trajectory.uniform(0.6, 1), Trajectory.uniform(0.3, -1),
            Trajectory.oscillatory(0.5, 1.2), Trajectory.oscillatory(2.0, 0.3),
            Trajectory.combined(0.4, 0.3, 1.0, 1), Trajectory.combined(0.2, 1.0, 0.5, -1)]


def _random_event(rng):
    while True:
        r = _random_unit(rng) * rng.uniform(3.0, 40.0)
        if math.hypot(r[1], r[2]) >= 1.0:
            return rng.uniform(-20.0, 20.0), r


def retarded_identities() -> list[SubCheck]:
    rng = np.random.default_rng(SEED + 5)
    trajs = _event_trajectories()
    worst_t = worst_g = worst_route = 0.0
    for k in range(200):
        traj = trajs[k % len(trajs)]
        t, r = _random_event(rng)
        tr = solve_retarded(traj, t, r).t_ret
        h = 1e-5 * max(1.0, abs(t))
        fd = (solve_retarded(traj, t + h, r).t_ret - solve_retarded(traj, t - h, r).t_ret) / (2 * h)
        an = dtret_dt(traj, tr, r)
        worst_t = max(worst_t, abs(fd - an) / abs(an))
        hr = 1e-5 * float(np.linalg.norm(r))
        g_fd = np.empty(3)
        for i in range(3):
            dr = np.zeros(3)
            dr[i] = hr
            g_fd[i] = (solve_retarded(traj, t, r + dr).t_ret - solve_retarded(traj, t, r - dr).t_ret) / (2 * hr)
        g_an = grad_tret(traj, tr, r)
        worst_g = max(worst_g, float(np.linalg.norm(g_fd - g_an) / np.linalg.norm(g_an)))
        s = evaluate(traj, t, r, t_ret=tr)
        worst_route = max(worst_route, float(np.max(np.abs(s.delta_A - delta_a_by_definition(s)))))
    return [SubCheck("dtret/dt vs finite difference", worst_t <= 1e-6, f"max rel {worst_t:.2e} <= 1e-6"),
            SubCheck("grad t_ret vs finite difference", worst_g <= 1e-6, f"max rel {worst_g:.2e} <= 1e-6"),
            SubCheck("Delta[A] == A_C - simplified(A_L)", worst_route <= 1e-10,
                     f"max abs {worst_route:.2e} <= 1e-10")]


# ----------------------------------------------------------------------- 6
ENVELOPE_OBSERVER = (20.0, 1.0, 0.0)


def residual_envelope_slope(traj: Trajectory, r, t_lo=1e2, t_hi=1e4, points=9, samples=400) -> float:
    """Slope of log max|residual| over one period against log t', for t' in [t_lo, t_hi]."""
    f = residual_integrand(traj, np.asarray(r, dtype=float))
    starts = np.geomspace(t_lo, t_hi, points)
    env = [np.max(np.linalg.norm(f(np.linspace(s, s + traj.period, samples)), axis=0)) for s in starts]
    return float(np.polyfit(np.log(starts), np.log(env), 1)[0])


def quadrature_oracles() -> list[SubCheck]:
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for _ in range(100):
        v, eps = rng.uniform(0.05, 0.95), int(rng.choice([-1, 1]))
        e = _random_unit(rng)
        if math.hypot(e[1], e[2]) < 0.05:
            e = (e + np.array([0.0, 0.3, 0.0])) / np.linalg.norm(e + np.array([0.0, 0.3, 0.0]))
        r, t_ret = rng.uniform(2.0, 1e3), rng.uniform(-10.0, 10.0)
        traj = Trajectory.uniform(v, eps)
        t = light_ray_time(traj, t_ret, r * e)
        closed = uniform_closed_form(v, eps, e, r, t_ret, t)
        brute = adaptive_integral(traj, t_ret, t, r * e, epsrel=1e-14).value
        worst = max(worst, float(np.max(np.abs(closed - brute))) / max(1.0, float(np.max(np.abs(closed)))))
    out = [SubCheck("uniform closed form vs adaptive (100)", worst <= 1e-12, f"max {worst:.2e} <= 1e-12")]

    worst_p = worst_d = 0.0
    for _ in range(10):
        traj = Trajectory.oscillatory(rng.uniform(0.2, 1.5), rng.uniform(0.3, 0.6))
        t_ret, (t, r) = rng.uniform(-5.0, 5.0), _random_event(rng)
        t = t_ret + rng.uniform(4.0, 12.0) * traj.period
        a = period_chunked(traj, t_ret, t, r).value
        b = adaptive_integral(traj, t_ret, t, r, epsrel=1e-14).value
        worst_p = max(worst_p, float(np.max(np.abs(a - b))))
    for _ in range(10):
        traj = Trajectory.combined(rng.uniform(0.1, 0.5), rng.uniform(0.1, 0.4), rng.uniform(0.5, 1.0),
                                   int(rng.choice([-1, 1])))
        t, r = _random_event(rng)
        t_ret = solve_retarded(traj, t, r).t_ret
        a = difference_trick(traj, t_ret, t, r).value
        b = adaptive_integral(traj, t_ret, t, r, epsrel=1e-14).value
        worst_d = max(worst_d, float(np.max(np.abs(a - b))))
    out.append(SubCheck("period chunked vs brute force (10)", worst_p <= 1e-9, f"max {worst_p:.2e} <= 1e-9"))
    out.append(SubCheck("difference trick vs brute force (10)", worst_d <= 1e-9, f"max {worst_d:.2e} <= 1e-9"))
    slope = residual_envelope_slope(Trajectory.combined(0.5, 0.3, 1.0, 1), ENVELOPE_OBSERVER)
    out.append(SubCheck("residual envelope slope on t' in [1e2, 1e4]", slope <= -3.0,
                        f"{slope:+.4f} <= -3 (observer {ENVELOPE_OBSERVER}, ahead of the charge)"))
    return out


# ----------------------------------------------------------------------- 7
def series_order() -> list[SubCheck]:
    """Truncation-error ratios at r, 2r, 4r.

    Evaluated in extended precision so that roundoff stays well below the
    r^-3 remainder at r = 1e3.  Points close to a zero of the r^-3 coefficient
    (proportional to P_4(e_x)) converge to the ratio 8 more slowly.
    """
    rng = np.random.default_rng(SEED + 7)
    ld = np.longdouble
    a, omega, r = ld(1), ld(1), ld(1000)
    lo, hi = np.inf, -np.inf
    for _ in range(20):
        tp, ex = ld(rng.uniform(0.0, 2 * math.pi)), ld(rng.uniform(-1.0, 1.0))
        err = [abs(cf.exact_integrand(a, omega, ex, tp, rr) - cf.series_integrand(a, omega, ex, tp, rr))
               for rr in (r, 2 * r, 4 * r)]
        for ratio in (err[0] / err[1], err[1] / err[2]):
            lo, hi = min(lo, float(ratio)), max(hi, float(ratio))
    ok = 6.4 <= lo and hi <= 9.6
    return [SubCheck("error ratio per doubling at 20 points", ok, f"range [{lo:.3f}, {hi:.3f}] within 8 +- 20%")]


# ----------------------------------------------------------------------- 8
def grid_projector() -> list[SubCheck]:
    mixed = mixed_test_field(33)
    red = divergence_reduction(mixed)
    grad = gradient_test_field(33)
    left = float(np.max(np.abs(proper_projection(grad).values)) / np.max(np.abs(grad.values)))
    errs = []
    for n in (17, 33):
        f = curl_test_field(n)
        errs.append(float(np.max(np.abs(proper_projection(f).values - f.values)) / np.max(np.abs(f.values))))
    order = math.log2(errs[0] / errs[1])
    return [SubCheck("divergence reduction at 33^3", red >= 50, f"{red:.1f} >= 50"),
            SubCheck("gradient bump remainder", left <= 0.02, f"{left:.4f} <= 0.02 of input max"),
            SubCheck("curl field change, 17^3 -> 33^3", order >= 2.0,
                     f"{errs[0]:.2e} -> {errs[1]:.2e}, observed order {order:.2f} >= 2")]


# ----------------------------------------------------------------------- 9
def on_axis_degeneracy() -> list[SubCheck]:
    cases = [("uniform", Trajectory.uniform(0.5, 1)), ("oscillatory", Trajectory.oscillatory(0.5, 1.0)),
             ("combined", Trajectory.combined(0.4, 0.3, 1.0, -1))]
    out = []
    for name, traj in cases:
        zero, smallest, margin = True, np.inf, np.inf
        for k, rad in enumerate(np.geomspace(10.0, 1e4, 10)):
            r = np.array([rad if k % 2 == 0 else -rad, 0.0, 0.0])
            t_ret = 0.3
            s = evaluate(traj, light_ray_time(traj, t_ret, r), r, t_ret=t_ret)
            zero &= bool(np.all(s.a_simplified == 0.0))
            mag = float(np.linalg.norm(s.a_C))
            noise = traj.c * s.tail_error + 1e-15 / np.linalg.norm(r)
            smallest, margin = min(smallest, mag), min(margin, mag / noise)
        out.append(SubCheck(f"{name}: simplified exactly zero, |A_C| > 0", zero and margin > 1e3,
                            f"zero={zero}, min |A_C| {smallest:.3e} ({margin:.1e} x noise)"))
    return out


CHECKS = [
    Check("AC1", "static charge null test", static_null, 1.0),
    Check("AC2", "uniform motion, same order", uniform_same_order, 10.0),
    Check("AC3", "oscillatory motion, higher order", oscillatory_higher_order, 60.0),
    Check("AC4", "combined motion, same order", combined_same_order, 300.0),
    Check("AC5", "retarded-time identities and route equivalence", retarded_identities, 30.0),
    Check("AC6", "quadrature oracle equivalence", quadrature_oracles, 120.0),
    Check("AC7", "1/r series truncation order", series_order, 5.0),
    Check("AC8", "grid projector", grid_projector, 120.0),
    Check("AC9", "on-axis degeneracy", on_axis_degeneracy, 30.0),
]


def run_check(check: Check) -> CheckResult:
    start = time.perf_counter()
    try:
        subs, err = check.func(), None
    except Exception as exc:  # reported as a failed check
        subs, err = [], f"{type(exc).__name__}: {exc}"
    return CheckResult(check.key, check.title, subs, time.perf_counter() - start, check.budget, err)


def run_all(keys=None) -> list[CheckResult]:
    return [run_check(c) for c in CHECKS if keys is None or c.key in keys]
