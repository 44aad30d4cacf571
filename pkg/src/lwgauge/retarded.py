"""Retarded-time root solving and the derivatives of t_ret(t, r).

The retarded condition F(t, t_ret) = t - t_ret - |r - R(t_ret)|/c = 0 has a
single root for subluminal orbits because dF/dt_ret <= -(1 - beta_max) < 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, ObserverOnCharge
from .trajectory import Trajectory

MAX_ITER = 200


@dataclass(frozen=True)
class RetardedSolution:
    t_ret: float
    residual: float
    iterations: int


def _separation(traj: Trajectory, t_ret: float, r) -> tuple[np.ndarray, float]:
    d = np.asarray(r, dtype=float) - traj.position(t_ret)
    dist = float(np.linalg.norm(d))
    return d, dist


def residual(traj: Trajectory, t: float, t_ret: float, r) -> float:
    """F(t, t_ret) of the retarded condition."""
    _, dist = _separation(traj, t_ret, r)
    return t - t_ret - dist / traj.c


def default_bracket(traj: Trajectory, t: float, r) -> tuple[float, float]:
    # |r - R(tau)| <= |r| + |R(t)| + beta*c*(t - tau) gives F(left) >= 1 - beta > 0
    beta = traj.max_speed_ratio()
    reach = float(np.linalg.norm(r)) + abs(float(traj.x(t)))
    left = t - reach / (traj.c * (1.0 - beta)) - 1.0
    return left, t


def solve_retarded(traj: Trajectory, t: float, r, bracket=None) -> RetardedSolution:
    """Unique root of the retarded condition by bracketed, safeguarded Newton.

    Newton steps use dF/dt_ret = -1 + beta.n; a step leaving the current
    bracket is replaced by bisection.  Iteration continues past the residual
    tolerance until the step size hits rounding level.
    """
    t = float(t)
    r = np.asarray(r, dtype=float)
    c = traj.c
    lo, hi = default_bracket(traj, t, r) if bracket is None else map(float, bracket)
    f_lo, f_hi = residual(traj, t, lo, r), residual(traj, t, hi, r)
    if f_hi == 0.0:
        return RetardedSolution(hi, 0.0, 0)
    if f_lo == 0.0:
        return RetardedSolution(lo, 0.0, 0)
    if not (f_lo > 0.0 > f_hi):
        raise NonConvergence(
            f"retarded-time bracket [{lo}, {hi}] does not enclose the root (F={f_lo}, {f_hi})"
        )

    eps = np.finfo(float).eps
    x = hi - (hi - lo) * f_hi / (f_hi - f_lo)  # secant start
    for it in range(1, MAX_ITER + 1):
        d, dist = _separation(traj, x, r)
        if dist == 0.0:
            raise ObserverOnCharge(f"observer coincides with the charge at t_ret={x}")
        fx = t - x - dist / c
        if fx == 0.0:
            return RetardedSolution(float(x), 0.0, it)
        if fx > 0.0:
            lo = x
        else:
            hi = x
        tol = 1e-12 * max(1.0, t - x)
        slope = -1.0 + traj.vx(x) * d[0] / (dist * c)
        x_new = x - fx / slope
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(fx) <= tol and abs(x_new - x) <= 4 * eps * max(1.0, abs(x)):
            return RetardedSolution(float(x), float(fx), it)
        if x_new == x:
            # bracket collapsed to adjacent floats; F is at rounding level here
            if abs(fx) <= max(tol, 8 * eps * max(abs(t), abs(x), dist / c)):
                return RetardedSolution(float(x), float(fx), it)
            break
        x = x_new
    raise NonConvergence(f"retarded-time solver did not converge in {MAX_ITER} iterations")


def _retarded_geometry(traj, t_ret, r):
    d, dist = _separation(traj, t_ret, r)
    if dist == 0.0:
        raise ObserverOnCharge(f"observer coincides with the charge at t_ret={t_ret}")
    return d, dist, traj.velocity(t_ret)


def dtret_dt(traj: Trajectory, t_ret: float, r) -> float:
    """dt_ret/dt = 1/(1 - beta.n) at the retarded event."""
    d, dist, vel = _retarded_geometry(traj, t_ret, r)
    return 1.0 / (1.0 - float(vel @ d) / (dist * traj.c))


def grad_tret(traj: Trajectory, t_ret: float, r) -> np.ndarray:
    """Spatial gradient of t_ret: -(r - R)/(c|r - R| - (r - R).dR/dt)."""
    d, dist, vel = _retarded_geometry(traj, t_ret, r)
    return -d / (traj.c * dist - float(d @ vel))


def light_ray_time(traj: Trajectory, t_ret: float, r) -> float:
    """Observation time t on the null ray from the source event at t_ret through r."""
    _, dist = _separation(traj, t_ret, r)
    return t_ret + dist / traj.c


def is_causal(sol: RetardedSolution, traj: Trajectory, t: float, r) -> bool:
    _, dist = _separation(traj, sol.t_ret, r)
    return math.isclose(traj.c * (t - sol.t_ret), dist, rel_tol=1e-12, abs_tol=1e-12)
