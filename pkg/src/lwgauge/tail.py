"""The non-local time integral  I(t_ret, t; r) = int_{t_ret}^{t} (r - R(t'))/|r - R(t')|^3 dt'.

Strategies:

* closed form for static and uniform motion (written in a cancellation-free
  form, see :func:`uniform_integral`);
* period chunking for oscillatory motion: N whole periods are one quadrature
  times N, plus the remainder;
* the difference trick for combined motion: uniform closed form plus the
  quadrature of the (fast-decaying) residual integrand;
* plain adaptive quadrature, always available as the brute-force route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ChargeCrossesObserver, ValidationError
from .quadrature import integrate
from .trajectory import Kind, Trajectory

DELTA_MIN = 1e-9
EPS = np.finfo(float).eps


class Strategy(str, Enum):
    CLOSED_FORM = "ClosedForm"
    ADAPTIVE = "Adaptive"
    PERIOD_CHUNKED = "PeriodChunked"
    DIFFERENCE_TRICK = "DifferenceTrick"


@dataclass(frozen=True)
class IntegralResult:
    value: np.ndarray
    abs_error_estimate: float
    strategy: Strategy


def integrand(traj: Trajectory, r, delta_min: float = DELTA_MIN):
    """Vectorised (r - R(t'))/|r - R(t')|^3 as a function of an array of t'."""
    rx, ry, rz = (float(u) for u in r)
    rho2 = ry * ry + rz * rz

    def f(tp):
        dx = rx - traj.x(tp)
        d2 = dx * dx + rho2
        if np.any(d2 < delta_min * delta_min):
            raise ChargeCrossesObserver(
                f"charge passes within {delta_min:g} of the observer at r={tuple(r)}"
            )
        inv3 = d2 ** -1.5
        return np.stack([dx * inv3, ry * inv3, rz * inv3], axis=-1)

    return f


def inverse_distance_integrand(traj: Trajectory, r, delta_min: float = DELTA_MIN):
    """1/|r - R(t')| as a function of t' (for the gradient-form cross-checks)."""
    rx, ry, rz = (float(u) for u in r)
    rho2 = ry * ry + rz * rz

    def f(tp):
        dx = rx - traj.x(tp)
        d2 = dx * dx + rho2
        if np.any(d2 < delta_min * delta_min):
            raise ChargeCrossesObserver(f"charge passes within {delta_min:g} of the observer")
        return d2 ** -0.5

    return f


# --------------------------------------------------------------------- closed form
def uniform_integral(v: float, epsilon: int, r, t0: float, t1: float,
                     delta_min: float = DELTA_MIN) -> np.ndarray:
    """Exact integral for R(t') = (eps*v*t', 0, 0) over [t0, t1] at observer position ``r``.

    With s = r_x - eps*v*t', rho^2 = r_y^2 + r_z^2 and h = sqrt(s^2 + rho^2)
    the antiderivatives are 1/(eps*v*h) (x) and -s/(eps*v*rho^2*h) (y, z).
    Their differences are rewritten so neither v nor rho^2 is divided out:

        x:    (t1 - t0)(s0 + s1) / (h0 h1 (h0 + h1))
        y,z:  r_{y,z} (t1 - t0)(s0 + s1) / (h0 h1 (s1 h0 + s0 h1))   if s0*s1 > 0

    so the static limit (v = 0) and the on-axis limit (rho = 0) are regular.
    """
    r = np.asarray(r, dtype=float)
    rx, ry, rz = r
    rho2 = ry * ry + rz * rz
    dt = t1 - t0
    if dt == 0.0:
        return np.zeros(3)
    s0 = rx - epsilon * v * t0
    s1 = rx - epsilon * v * t1
    closest = 0.0 if s0 * s1 <= 0.0 else min(abs(s0), abs(s1))
    if math.sqrt(closest * closest + rho2) < delta_min:
        raise ChargeCrossesObserver(f"uniform orbit passes within {delta_min:g} of r={tuple(r)}")
    h0 = math.hypot(s0, math.sqrt(rho2))
    h1 = math.hypot(s1, math.sqrt(rho2))
    ix = dt * (s0 + s1) / (h0 * h1 * (h0 + h1))
    if s0 == s1:
        it = dt / h0 ** 3
    elif s0 * s1 > 0.0:
        it = dt * (s0 + s1) / (h0 * h1 * (s1 * h0 + s0 * h1))
    else:
        # opposite signs (or a zero): no cancellation, rho is bounded away from 0 here
        it = -(s1 / h1 - s0 / h0) / (epsilon * v * rho2)
    return np.array([ix, ry * it, rz * it])


def uniform_closed_form(v: float, epsilon: int, e, r: float, t_ret: float, t: float) -> np.ndarray:
    """Closed-form tail integral for uniform motion, observer at ``r * e``."""
    e = np.asarray(e, dtype=float)
    if not math.isclose(float(np.linalg.norm(e)), 1.0, rel_tol=0, abs_tol=1e-12):
        raise ValidationError("direction e must be a unit vector")
    return uniform_integral(v, epsilon, r * e, t_ret, t)


def uniform_closed_form_printed(v, epsilon, e, r, t_ret, t):
    """The textbook antiderivative differences, evaluated literally.

    Divides by v and by 1 - e_x^2, so it loses accuracy near the axis; kept as an
    independent cross-check of :func:`uniform_integral`.
    """
    ex, ey, ez = np.asarray(e, dtype=float)
    ev = epsilon * v

    def root(tt):
        return math.sqrt(r * r + tt * tt * v * v - 2 * r * epsilon * ex * v * tt)

    ix = (1.0 / root(t) - 1.0 / root(t_ret)) / ev
    if 1.0 - ex * ex < 1e-8:
        return np.array([ix, 0.0, 0.0])
    br = (r * ex - ev * t) / root(t) - (r * ex - ev * t_ret) / root(t_ret)
    pref = -1.0 / (r * ev * (1.0 - ex * ex))
    return np.array([ix, pref * ey * br, pref * ez * br])


# -------------------------------------------------------------- quadrature routes
def _panels_for(traj: Trajectory, t0: float, t1: float, per_period: int = 2) -> int:
    if traj.omega > 0:
        return max(1, int(math.ceil((t1 - t0) / traj.period * per_period)))
    return 8


def _closest_breakpoints(traj: Trajectory, r, t0: float, t1: float):
    """For non-oscillating orbits put a breakpoint where the charge passes closest."""
    if traj.v == 0.0 or traj.a != 0.0:
        return None
    tc = float(r[0]) / (traj.epsilon * traj.v)
    if t0 < tc < t1:
        return [tc]
    return None


def adaptive_integral(traj: Trajectory, t0: float, t1: float, r, *, epsrel: float = 1e-13,
                      epsabs: float = 0.0, delta_min: float = DELTA_MIN):
    """Brute-force adaptive quadrature over the whole interval."""
    r = np.asarray(r, dtype=float)
    f = integrand(traj, r, delta_min)
    bp = _closest_breakpoints(traj, r, t0, t1)
    n = _panels_for(traj, t0, t1)
    if bp is not None:
        return integrate(f, t0, t1, epsrel=epsrel, epsabs=epsabs, breakpoints=bp)
    return integrate(f, t0, t1, epsrel=epsrel, epsabs=epsabs, n_panels=n)


def period_chunked(traj: Trajectory, t_ret: float, t: float, r, *, epsrel: float = 1e-14,
                   delta_min: float = DELTA_MIN) -> IntegralResult:
    """t - t_ret = N*T + dt: N times one whole-period integral plus the remainder.

    The integrand is exactly T-periodic in t' for a bounded oscillation and a
    fixed observer, so every whole period contributes the same amount.
    """
    if traj.v != 0.0 or traj.omega <= 0:
        raise ValidationError("period chunking needs a purely oscillatory orbit")
    r = np.asarray(r, dtype=float)
    if t == t_ret:
        return IntegralResult(np.zeros(3), 0.0, Strategy.PERIOD_CHUNKED)
    T = traj.period
    n_periods = int(math.floor((t - t_ret) / T))
    f = integrand(traj, r, delta_min)
    value = np.zeros(3)
    err = 0.0
    if n_periods > 0:
        one = integrate(f, t_ret, t_ret + T, epsrel=epsrel, n_panels=4)
        value = n_periods * one.value
        err = n_periods * one.abs_error
    start = t_ret + n_periods * T
    if t > start:
        rest = integrate(f, start, t, epsrel=epsrel, n_panels=4)
        value = value + rest.value
        err += rest.abs_error
    return IntegralResult(value, err, Strategy.PERIOD_CHUNKED)


def residual_integrand(traj: Trajectory, r, delta_min: float = DELTA_MIN):
    """Combined-motion integrand minus the uniform-motion integrand (same v, eps)."""
    full = integrand(traj, r, delta_min)
    uni = integrand(Trajectory.uniform(traj.v, traj.epsilon, traj.c) if traj.v > 0
                    else Trajectory.static(traj.c), r, 0.0)
    return lambda tp: full(tp) - uni(tp)


def difference_trick(traj: Trajectory, t_ret: float, t: float, r, *,
                     delta_min: float = DELTA_MIN) -> IntegralResult:
    """Uniform closed form plus the quadrature of the residual integrand."""
    r = np.asarray(r, dtype=float)
    base = uniform_integral(traj.v, traj.epsilon, r, t_ret, t, delta_min)
    if t == t_ret or traj.a == 0.0:
        return IntegralResult(base, 4 * EPS * float(np.max(np.abs(base))), Strategy.DIFFERENCE_TRICK)
    scale = float(np.max(np.abs(base)))
    res = integrate(residual_integrand(traj, r, delta_min), t_ret, t,
                    epsabs=1e-14 * scale, epsrel=1e-12, n_panels=_panels_for(traj, t_ret, t))
    return IntegralResult(base + res.value, res.abs_error + 4 * EPS * scale,
                          Strategy.DIFFERENCE_TRICK)


def integrate_tail(traj: Trajectory, t_ret: float, t: float, r, *, strategy: Strategy | None = None,
                   delta_min: float = DELTA_MIN) -> IntegralResult:
    """Dispatch to the strategy suited to the orbit (or the one requested)."""
    if t < t_ret:
        raise ValidationError(f"tail integral needs t >= t_ret (t={t}, t_ret={t_ret})")
    r = np.asarray(r, dtype=float)
    if strategy is None:
        strategy = {
            Kind.STATIC: Strategy.CLOSED_FORM,
            Kind.UNIFORM: Strategy.CLOSED_FORM,
            Kind.OSCILLATORY: Strategy.PERIOD_CHUNKED,
            Kind.COMBINED: Strategy.DIFFERENCE_TRICK,
        }[traj.kind]
    strategy = Strategy(strategy)
    if strategy is Strategy.CLOSED_FORM:
        if traj.a != 0.0:
            raise ValidationError("closed form only exists for static or uniform motion")
        val = uniform_integral(traj.v, traj.epsilon, r, t_ret, t, delta_min)
        return IntegralResult(val, 4 * EPS * float(np.max(np.abs(val))), strategy)
    if strategy is Strategy.PERIOD_CHUNKED:
        return period_chunked(traj, t_ret, t, r, delta_min=delta_min)
    if strategy is Strategy.DIFFERENCE_TRICK:
        return difference_trick(traj, t_ret, t, r, delta_min=delta_min)
    if t == t_ret:
        return IntegralResult(np.zeros(3), 0.0, strategy)
    res = adaptive_integral(traj, t_ret, t, r, delta_min=delta_min)
    return IntegralResult(np.asarray(res.value), res.abs_error, strategy)


def inverse_distance_integral(traj: Trajectory, t0: float, t1: float, r, epsrel: float = 1e-14) -> float:
    """G = int_{t0}^{t1} dt'/|r - R(t')| by adaptive quadrature."""
    r = np.asarray(r, dtype=float)
    if t0 == t1:
        return 0.0
    res = integrate(inverse_distance_integrand(traj, r), t0, t1, epsrel=epsrel,
                    n_panels=_panels_for(traj, t0, t1))
    return float(res.value)
