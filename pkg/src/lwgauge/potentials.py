"""Lienard-Wiechert (Lorenz gauge) potentials and the instantaneous Coulomb scalar potential."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ObserverOnCharge
from .retarded import solve_retarded
from .trajectory import Trajectory


@dataclass(frozen=True)
class LWSample:
    """Lorenz-gauge potentials at one event plus the retarded geometry they were built from."""

    t_ret: float
    phi_L: float
    a_L: np.ndarray
    n_ret: np.ndarray
    beta_ret: np.ndarray
    kappa: float
    dist_ret: float


def lw_from_tret(traj: Trajectory, t_ret: float, r, q: float = 1.0) -> LWSample:
    """Evaluate the potentials for an already known retarded time."""
    d = np.asarray(r, dtype=float) - traj.position(t_ret)
    dist = float(np.linalg.norm(d))
    if dist == 0.0:
        raise ObserverOnCharge(f"observer coincides with the charge at t_ret={t_ret}")
    n = d / dist
    beta = traj.velocity(t_ret) / traj.c
    kappa = 1.0 - float(beta @ n)
    phi = q / (dist * kappa)
    return LWSample(t_ret, phi, phi * beta, n, beta, kappa, dist)


def lw_sample(traj: Trajectory, t: float, r, q: float = 1.0) -> LWSample:
    sol = solve_retarded(traj, t, r)
    return lw_from_tret(traj, sol.t_ret, r, q)


def phi_coulomb(traj: Trajectory, t: float, r, q: float = 1.0) -> float:
    """Instantaneous Coulomb potential q/|r - R(t)| (present time, not retarded)."""
    dist = float(np.linalg.norm(np.asarray(r, dtype=float) - traj.position(t)))
    if dist == 0.0:
        raise ObserverOnCharge(f"observer coincides with the charge at t={t}")
    return q / dist
