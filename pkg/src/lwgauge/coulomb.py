"""Coulomb-gauge vector potential, the simplified (n-removing) projection of A_L,
and the discrepancy Delta[A] between the two transverse projections."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potentials import lw_from_tret, phi_coulomb
from .retarded import solve_retarded
from .tail import Strategy, integrate_tail, inverse_distance_integral
from .trajectory import Trajectory

N_CONVENTIONS = ("retarded", "instantaneous")


@dataclass(frozen=True)
class PotentialSample:
    t: float
    r: np.ndarray
    t_ret: float
    phi_L: float
    phi_C: float
    a_L: np.ndarray
    a_C: np.ndarray
    a_simplified: np.ndarray
    delta_A: np.ndarray
    tail: np.ndarray  # the bare time integral, before the q*c factor
    tail_error: float


def simplified_projection(vec, n) -> np.ndarray:
    """V - (n.V) n for a unit vector n."""
    vec = np.asarray(vec, dtype=float)
    n = np.asarray(n, dtype=float)
    return vec - float(n @ vec) * n


def _instantaneous_n(traj, t, r):
    d = np.asarray(r, dtype=float) - traj.position(t)
    return d / np.linalg.norm(d)


def evaluate(traj: Trajectory, t: float, r, q: float = 1.0, *, t_ret: float | None = None,
             n_convention: str = "retarded", strategy: Strategy | None = None) -> PotentialSample:
    """All potentials at the event (t, r).

    ``t_ret`` may be supplied when already known (e.g. on a null ray); otherwise
    it is solved for.  The tail integral is computed once and shared by A_C and
    Delta[A].
    """
    if n_convention not in N_CONVENTIONS:
        raise ValueError(f"n_convention must be one of {N_CONVENTIONS}")
    r = np.asarray(r, dtype=float)
    if t_ret is None:
        t_ret = solve_retarded(traj, t, r).t_ret
    lw = lw_from_tret(traj, t_ret, r, q)
    tail = integrate_tail(traj, t_ret, t, r, strategy=strategy)
    qc_tail = q * traj.c * tail.value

    a_c = q * (lw.beta_ret - lw.n_ret) / (lw.dist_ret * lw.kappa) + qc_tail
    if n_convention == "retarded":
        n = lw.n_ret
        a_simp = simplified_projection(lw.a_L, n)
        delta = -q * lw.n_ret / lw.dist_ret + qc_tail
    else:
        n = _instantaneous_n(traj, t, r)
        a_simp = simplified_projection(lw.a_L, n)
        delta = a_c - a_simp
    return PotentialSample(
        t=float(t), r=r, t_ret=float(t_ret), phi_L=lw.phi_L,
        phi_C=phi_coulomb(traj, t, r, q), a_L=lw.a_L, a_C=a_c,
        a_simplified=a_simp, delta_A=delta, tail=tail.value,
        tail_error=tail.abs_error_estimate,
    )


def a_coulomb(traj: Trajectory, t: float, r, q: float = 1.0) -> np.ndarray:
    return evaluate(traj, t, r, q).a_C


def a_simplified(traj: Trajectory, t: float, r, q: float = 1.0,
                 n_convention: str = "retarded") -> np.ndarray:
    return evaluate(traj, t, r, q, n_convention=n_convention).a_simplified


def delta_a(traj: Trajectory, t: float, r, q: float = 1.0) -> np.ndarray:
    return evaluate(traj, t, r, q).delta_A


def delta_a_by_definition(sample: PotentialSample) -> np.ndarray:
    """A_C - simplified(A_L): the definition route, for comparison with ``delta_A``."""
    return sample.a_C - sample.a_simplified


# ----------------------------------------------------------------- cross-checks
def potential_time_integral(traj: Trajectory, t: float, r) -> float:
    """G(t, t_ret(t, r), r) = int_{t_ret}^{t} dt'/|r - R(t')| with t_ret re-solved."""
    t_ret = solve_retarded(traj, t, r).t_ret
    return inverse_distance_integral(traj, t_ret, t, r)


def grad_potential_time_integral(traj: Trajectory, t: float, r, step: float) -> np.ndarray:
    """Centered finite-difference gradient of :func:`potential_time_integral`."""
    r = np.asarray(r, dtype=float)
    g = np.zeros(3)
    for i in range(3):
        dr = np.zeros(3)
        dr[i] = step
        g[i] = (potential_time_integral(traj, t, r + dr)
                - potential_time_integral(traj, t, r - dr)) / (2 * step)
    return g


def grad_identity_rhs(traj: Trajectory, t: float, r) -> np.ndarray:
    """Boundary term n/(c*dist*kappa) minus the tail integral."""
    r = np.asarray(r, dtype=float)
    t_ret = solve_retarded(traj, t, r).t_ret
    lw = lw_from_tret(traj, t_ret, r)
    tail = integrate_tail(traj, t_ret, t, r).value
    return lw.n_ret / (traj.c * lw.dist_ret * lw.kappa) - tail


def a_coulomb_gradient_form(traj: Trajectory, t: float, r, q: float = 1.0,
                            step: float | None = None) -> np.ndarray:
    """A_L - q c grad G, with the gradient taken by finite differences (check path only)."""
    r = np.asarray(r, dtype=float)
    if step is None:
        step = 1e-5 * max(1.0, float(np.linalg.norm(r)))
    t_ret = solve_retarded(traj, t, r).t_ret
    a_l = lw_from_tret(traj, t_ret, r, q).a_L
    return a_l - q * traj.c * grad_potential_time_integral(traj, t, r, step)


def divergence_a_coulomb(traj: Trajectory, t: float, r, q: float = 1.0,
                         h: float | None = None) -> tuple[float, float]:
    """Central-difference divergence of A_C at fixed t; returns (div, h)."""
    r = np.asarray(r, dtype=float)
    if h is None:
        h = 1e-3 * float(np.linalg.norm(r))
    div = 0.0
    for i in range(3):
        dr = np.zeros(3)
        dr[i] = h
        div += (a_coulomb(traj, t, r + dr, q)[i] - a_coulomb(traj, t, r - dr, q)[i]) / (2 * h)
    return div, h
