"""Null-ray sweeps at fixed retarded time, power-law fits and order verdicts."""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .coulomb import PotentialSample, evaluate
from .errors import DegenerateInput, NonConvergence, SignChange, ValidationError
from .retarded import light_ray_time, solve_retarded
from .trajectory import Trajectory

CSV_COLUMNS = ["r", "t", "t_ret", "phi_L", "phi_C", "ALx", "ALy", "ALz", "ACx", "ACy", "ACz",
               "dAx", "dAy", "dAz", "simX", "simY", "simZ"]
MIN_POINTS = 8
MAGNITUDE_FLOOR = 1e-13
SAME_ORDER_GAP = 0.3
HIGHER_ORDER_GAP = 0.7


def worker_count() -> int:
    env = os.environ.get("LWGAUGE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class NullRaySweep:
    traj: Trajectory
    t_ret: float
    e: np.ndarray
    radii: np.ndarray
    samples: list[PotentialSample]
    q: float = 1.0
    closure_errors: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def column(self, name: str) -> np.ndarray:
        return np.array([row[CSV_COLUMNS.index(name)] for row in self.rows()])

    def stack(self, attr: str) -> np.ndarray:
        return np.array([getattr(s, attr) for s in self.samples])

    def rows(self):
        for rad, s in zip(self.radii, self.samples):
            yield [float(rad), s.t, s.t_ret, s.phi_L, s.phi_C, *s.a_L, *s.a_C, *s.delta_A,
                   *s.a_simplified]


def near_zone_scale(traj: Trajectory) -> float:
    scale = max(traj.a, 1.0)
    if traj.omega > 0 and traj.v > 0:
        scale = max(scale, traj.v / traj.omega)
    return scale


def geometric_radii(r0: float, growth: float, count: int) -> np.ndarray:
    return r0 * growth ** np.arange(count)


def sweep(traj: Trajectory, t_ret: float, e, r0: float, growth: float = 2.0, count: int = 12,
          q: float = 1.0, *, check_near_zone: bool = True, n_convention: str = "retarded",
          workers: int | None = None) -> NullRaySweep:
    """Evaluate all potentials on the light ray leaving R(t_ret) through the points r_k * e."""
    e = np.asarray(e, dtype=float)
    if not math.isclose(float(np.linalg.norm(e)), 1.0, abs_tol=1e-12):
        raise ValidationError("sweep direction must be a unit vector")
    if count < MIN_POINTS:
        raise ValidationError(f"sweep needs count >= {MIN_POINTS}, got {count}")
    if growth <= 1:
        raise ValidationError(f"sweep growth must exceed 1, got {growth}")
    if check_near_zone and r0 < 100 * near_zone_scale(traj):
        raise ValidationError(
            f"r0={r0} is inside the near zone; need r0 >= {100 * near_zone_scale(traj)}")
    radii = geometric_radii(r0, growth, count)

    def one(rad):
        r = rad * e
        t = light_ray_time(traj, t_ret, r)
        s = evaluate(traj, t, r, q, t_ret=t_ret, n_convention=n_convention)
        back = solve_retarded(traj, t, r).t_ret
        return s, abs(back - t_ret) / max(1.0, t - t_ret)

    n = workers or worker_count()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            out = list(pool.map(one, radii))
    else:
        out = [one(rad) for rad in radii]
    return NullRaySweep(traj, float(t_ret), e, radii, [o[0] for o in out], q,
                        np.array([o[1] for o in out]))


def write_sweep_csv(sw: NullRaySweep, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in sw.rows():
        writer.writerow([repr(float(x)) for x in row])


def sweep_csv_text(sw: NullRaySweep) -> str:
    buf = io.StringIO()
    write_sweep_csv(sw, buf)
    return buf.getvalue()


# ------------------------------------------------------------------------ fitting
@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    coefficient: float
    r_window: tuple[float, float]
    residual_rms: float
    n_points: int


def fit_power_law(values, radii) -> PowerLawFit:
    """Least squares of log|value| against log r; the coefficient carries the sign."""
    values = np.asarray(values, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if values.shape != radii.shape or values.size < MIN_POINTS:
        raise DegenerateInput(f"need at least {MIN_POINTS} (radius, value) pairs")
    if np.any(radii <= 0) or np.any(~np.isfinite(values)):
        raise DegenerateInput("radii must be positive and values finite")
    if np.any(values == 0):
        raise DegenerateInput("cannot fit a power law through zero values")
    sign = np.sign(values)
    if np.any(sign != sign[0]):
        raise SignChange("values change sign across the sweep")
    x, y = np.log(radii), np.log(np.abs(values))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return PowerLawFit(float(slope), float(sign[0] * math.exp(intercept)),
                       (float(radii.min()), float(radii.max())),
                       float(np.sqrt(np.mean(resid**2))), int(values.size))


def richardson_coefficient(values, radii, assumed_power: float, levels: int = 2,
                           rtol: float = 0.05) -> float:
    """Extrapolate lim r^(-p) f(r) assuming corrections in integer powers of 1/r.

    Radii must be geometric.  Raises NonConvergence when the last two
    extrapolants of the top level disagree by more than ``rtol``.
    """
    values = np.asarray(values, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if values.size < levels + 2:
        raise DegenerateInput("too few points for Richardson extrapolation")
    ratios = radii[1:] / radii[:-1]
    g = float(ratios[0])
    if not np.allclose(ratios, g, rtol=1e-9):
        raise DegenerateInput("Richardson extrapolation needs geometric radii")
    table = values * radii ** (-assumed_power)
    for j in range(1, levels + 1):
        gj = g**j
        table = (gj * table[1:] - table[:-1]) / (gj - 1)
    best, prev = float(table[-1]), float(table[-2])
    if abs(best - prev) > rtol * abs(best) + 1e-300:
        raise NonConvergence(f"Richardson extrapolants diverge ({prev} vs {best})")
    return best


# ------------------------------------------------------------------------ verdicts
@dataclass(frozen=True)
class ComponentVerdict:
    component: str
    verdict: str
    ac_fit: PowerLawFit | None
    delta_fit: PowerLawFit | None
    note: str = ""


@dataclass(frozen=True)
class VerdictReport:
    components: list[ComponentVerdict]

    @property
    def overall(self) -> str:
        got = {c.verdict for c in self.components if c.verdict != "SKIPPED"}
        if not got:
            return "SKIPPED"
        return got.pop() if len(got) == 1 else "MIXED"

    def lines(self):
        for c in self.components:
            pa = f"{c.ac_fit.exponent:+.4f}" if c.ac_fit else "   n/a "
            pd = f"{c.delta_fit.exponent:+.4f}" if c.delta_fit else "   n/a "
            yield f"{c.component}: A_C exponent {pa}  Delta exponent {pd}  -> {c.verdict} {c.note}".rstrip()
        yield f"overall: {self.overall}"


def constant_sign_tail(values, radii):
    """Longest trailing run of same-signed nonzero values."""
    values = np.asarray(values, dtype=float)
    sign = np.sign(values[-1])
    k = values.size
    while k > 0 and np.sign(values[k - 1]) == sign and sign != 0:
        k -= 1
    return values[k:], np.asarray(radii)[k:]


def classify(ac_exponent: float, delta_exponent: float) -> str:
    gap = ac_exponent - delta_exponent
    if abs(gap) < SAME_ORDER_GAP:
        return "SAME_ORDER"
    if gap >= HIGHER_ORDER_GAP:
        return "HIGHER_ORDER"
    return "INCONCLUSIVE"


def _usable(values, floor):
    return np.all(np.abs(values) >= floor)


def verdict_from_columns(radii, a_c, delta, names=("x", "y", "z")) -> VerdictReport:
    """Classify each component from (n, 3) arrays of A_C and Delta[A] along a sweep."""
    radii = np.asarray(radii, dtype=float)
    a_c = np.asarray(a_c, dtype=float)
    delta = np.asarray(delta, dtype=float)
    floor = MAGNITUDE_FLOOR * np.max(np.abs(a_c), axis=1)
    out = []
    for i, name in enumerate(names):
        ac, dl = a_c[:, i], delta[:, i]
        if not (_usable(ac, floor) and _usable(dl, floor)):
            out.append(ComponentVerdict(name, "SKIPPED", None, None, "(below magnitude floor)"))
            continue
        fits = []
        for vals in (ac, dl):
            v, rr = constant_sign_tail(vals, radii)
            fits.append(fit_power_law(v, rr) if v.size >= MIN_POINTS else None)
        if fits[0] is None or fits[1] is None:
            out.append(ComponentVerdict(name, "SKIPPED", fits[0], fits[1], "(sign change)"))
            continue
        out.append(ComponentVerdict(name, classify(fits[0].exponent, fits[1].exponent),
                                    fits[0], fits[1]))
    return VerdictReport(out)


def same_order_verdict(sw: NullRaySweep) -> VerdictReport:
    return verdict_from_columns(sw.radii, sw.stack("a_C"), sw.stack("delta_A"))
