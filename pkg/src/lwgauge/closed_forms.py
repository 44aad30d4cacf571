"""Leading-order far-zone coefficients along a null ray (fixed t_ret, r -> infinity).

Each function returns the coefficient of r**power.  Where the printed formulas
are internally inconsistent a ``variant`` argument selects between the
printed expression and the corrected one; the corrected variants are the ones
that agree with direct numerical extrapolation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError

TOL_AXIS = 1e-8


class Case(str, Enum):
    UNIFORM_AC = "UniformAC"
    UNIFORM_DELTA = "UniformDelta"
    OSC_AC = "OscAC"
    OSC_DELTA = "OscDelta"
    COMBINED_AC = "CombinedAC"
    COMBINED_DELTA = "CombinedDelta"


@dataclass(frozen=True)
class LeadingOrder:
    coeff: np.ndarray
    power: int
    case_id: Case


def _unit(e):
    e = np.asarray(e, dtype=float)
    if not math.isclose(float(np.linalg.norm(e)), 1.0, abs_tol=1e-12):
        raise ValidationError("direction e must be a unit vector")
    return e


def _check_variant(variant, allowed=("printed", "corrected")):
    if variant not in allowed:
        raise ValidationError(f"variant must be one of {allowed}, got {variant!r}")


def uniform_ac_leading(q, beta, epsilon, e, variant="corrected") -> LeadingOrder:
    """A_C for R = eps*v*t.

    ``variant="printed"`` drops epsilon from the radical of the x-component,
    as the x-formula is printed; ``"corrected"`` keeps it, matching the y,z
    formula.  The two coincide for epsilon = +1.
    """
    _check_variant(variant)
    if not 0 < beta < 1:
        raise ValidationError("need 0 < beta < 1")
    ex, ey, ez = _unit(e)
    eb = epsilon * beta
    rad_x = math.sqrt(1 + beta**2 - 2 * (beta if variant == "printed" else eb) * ex)
    rad = math.sqrt(1 + beta**2 - 2 * eb * ex)
    cx = -(q / eb) * ((1 - beta**2) / (1 - eb * ex) - 1 / rad_x)
    if 1 - ex * ex < TOL_AXIS:
        cy = cz = 0.0
    else:
        br = (q / eb) * (ex - eb) / (1 - ex * ex) * (1 / (1 - eb * ex) - 1 / rad)
        cy, cz = br * ey, br * ez
    return LeadingOrder(np.array([cx, cy, cz]), -1, Case.UNIFORM_AC)


def uniform_delta_leading(q, beta, epsilon, e) -> LeadingOrder:
    if not 0 < beta < 1:
        raise ValidationError("need 0 < beta < 1")
    ex, ey, ez = _unit(e)
    eb = epsilon * beta
    rad = math.sqrt(1 + beta**2 - 2 * eb * ex)
    cx = -(q / eb) * (1 + eb * ex - 1 / rad)
    if 1 - ex * ex < TOL_AXIS:
        cy = cz = 0.0
    else:
        br = (q / eb) / (1 - ex * ex) * (ex - eb * (1 - ex * ex) + (eb - ex) / rad)
        cy, cz = br * ey, br * ez
    return LeadingOrder(np.array([cx, cy, cz]), -1, Case.UNIFORM_DELTA)


def osc_ac_leading(q, a, omega, c, t_ret, e, variant="corrected") -> LeadingOrder:
    """A_C for R = a sin(omega t).

    With b = a omega cos(omega t_ret)/c the printed form is
    -q b (1 - e_x^2)/(1 + b e_x) for x and +q b e_x e_yz/(1 + b e_x) for y,z.
    Numerical extrapolation (and the beta -> 0 limit of the combined-motion
    formula) gives the same expressions with b -> -b; that is ``"corrected"``.
    """
    _check_variant(variant)
    if a * omega >= c:
        raise ValidationError("need a*omega < c")
    ex, ey, ez = _unit(e)
    b = a * omega * math.cos(omega * t_ret) / c
    if variant == "corrected":
        b = -b
    den = 1 + b * ex
    cx = -q * b * (1 - ex * ex) / den
    return LeadingOrder(np.array([cx, q * b * ex * ey / den, q * b * ex * ez / den]), -1, Case.OSC_AC)


def osc_delta_leading(q, a, e, t_ret, omega, variant="corrected") -> LeadingOrder:
    """r^-2 coefficient of Delta[A] for R = a sin(omega t).

    Printed: -2 q a sin(omega t_ret) e_x (e_x, e_y, e_z).  Expanding -q n/dist
    and the tail to second order instead gives
    -q a sin(omega t_ret) (3 e_x^2 - 1, 3 e_x e_y, 3 e_x e_z) ("corrected");
    the two agree on the axis e_x = +-1, where y and z vanish.
    """
    _check_variant(variant)
    ex, ey, ez = _unit(e)
    s = math.sin(omega * t_ret)
    if variant == "printed":
        coeff = -2 * q * a * s * ex * np.array([ex, ey, ez])
    else:
        coeff = -q * a * s * np.array([3 * ex * ex - 1, 3 * ex * ey, 3 * ex * ez])
    return LeadingOrder(coeff, -2, Case.OSC_DELTA)


def combined_ac_leading(q, beta, epsilon, a, omega, c, t_ret, e, *,
                        radical_variant="corrected", denominator_sign="printed") -> LeadingOrder:
    """Uniform part plus the oscillation correction with denominator
    (1 - eps beta e_x)(c - c eps beta e_x - a omega e_x cos(omega t_ret)).

    ``denominator_sign="flipped"`` uses +a omega e_x cos(...) instead, i.e. the
    sign found in the pure-oscillation formula; extrapolation favours the printed sign.
    """
    _check_variant(denominator_sign, ("printed", "flipped"))
    if beta + a * omega / c >= 1:
        raise ValidationError("need (v + a omega)/c < 1")
    ex, ey, ez = _unit(e)
    base = uniform_ac_leading(q, beta, epsilon, e, radical_variant).coeff
    cw = a * omega * math.cos(omega * t_ret)
    k = 1 - beta * epsilon * ex
    sgn = -1.0 if denominator_sign == "printed" else 1.0
    den = k * (c - c * beta * epsilon * ex + sgn * cw * ex)
    corr = np.array([q * cw * (1 - ex * ex) / den, -q * cw * ex * ey / den, -q * cw * ex * ez / den])
    return LeadingOrder(base + corr, -1, Case.COMBINED_AC)


def combined_delta_leading(q, beta, epsilon, e) -> LeadingOrder:
    """Same leading coefficients as uniform motion with the same v and epsilon."""
    lo = uniform_delta_leading(q, beta, epsilon, e)
    return LeadingOrder(lo.coeff, -1, Case.COMBINED_DELTA)


def exact_integrand(a, omega, e_x, tp, r):
    """(r_x - R_x)/|r - R|^3 scaled by r^2 for R = a sin(omega t'), observer at r*e."""
    u = (a / r) * np.sin(omega * tp)
    return (e_x - u) / (1 - 2 * e_x * u + u * u) ** 1.5


def series_integrand(a, omega, e_x, tp, r, variant="corrected"):
    """Three-term 1/r expansion of :func:`exact_integrand`.

    The second-order term is -(3/2) u^2 e_x (3 - 5 e_x^2) with u = (a/r) sin(omega t').
    ``variant="printed"`` omits the e_x factor; the two agree only at e_x = +-1, and
    the printed form leaves an O(r^-2) truncation error elsewhere.
    """
    _check_variant(variant)
    s = np.sin(omega * tp)
    k = e_x if variant == "corrected" else 1.0
    return e_x - (a / r) * s * (1 - 3 * e_x**2) - (1.5 * a**2 / r**2) * s**2 * k * (3 - 5 * e_x**2)
