"""Printed versus corrected far-zone formulas, scored against numerical extrapolation.

For each formula variant and a fan of directions e = (cos th, 0, sin th), the
script extrapolates the sweep and reports the worst relative mismatch.
"""
import argparse
import math

import numpy as np

from lwgauge import closed_forms as cf
from lwgauge.asymptotics import richardson_coefficient, sweep
from lwgauge.trajectory import Trajectory


def extrapolate(traj, t_ret, e, col, power):
    sw = sweep(traj, t_ret, e, 1e3, 2.0, 10)
    return richardson_coefficient(sw.column(col), sw.radii, power)


def score(label, traj, t_ret, directions, col, power, variants):
    worst = {k: 0.0 for k in variants}
    for e in directions:
        got = extrapolate(traj, t_ret, e, col, power)
        for k, fn in variants.items():
            want = fn(e)
            worst[k] = max(worst[k], abs(got - want) / max(abs(got), 1e-12))
    print(f"{label}: " + "  ".join(f"{k} worst rel {v:.2e}" for k, v in worst.items()))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--angles", type=int, default=7)
    args = ap.parse_args()
    dirs = [np.array([math.cos(th), 0.0, math.sin(th)]) for th in np.linspace(0.3, 2.8, args.angles)]

    tr = Trajectory.uniform(0.5, -1)
    score("uniform A_C^x radical (eps=-1)", tr, 0.0, dirs, "ACx", -1,
          {v: (lambda e, v=v: cf.uniform_ac_leading(1, 0.5, -1, e, v).coeff[0]) for v in ("printed", "corrected")})

    tr, t_ret = Trajectory.oscillatory(0.5, 1.0), 0.4
    score("oscillatory A_C^x sign", tr, t_ret, dirs, "ACx", -1,
          {v: (lambda e, v=v: cf.osc_ac_leading(1, 0.5, 1.0, 1.0, t_ret, e, v).coeff[0])
           for v in ("printed", "corrected")})
    score("oscillatory Delta^z", tr, t_ret, dirs, "dAz", -2,
          {v: (lambda e, v=v: cf.osc_delta_leading(1, 0.5, e, t_ret, 1.0, v).coeff[2])
           for v in ("printed", "corrected")})

    tr, t_ret = Trajectory.combined(0.3, 0.3, 1.0, 1), 0.2
    score("combined A_C^x denominator", tr, t_ret, dirs, "ACx", -1,
          {s: (lambda e, s=s: cf.combined_ac_leading(1, 0.3, 1, 0.3, 1.0, 1.0, t_ret, e,
                                                     denominator_sign=s).coeff[0])
           for s in ("printed", "flipped")})

    rng = np.random.default_rng(0)
    for v in ("printed", "corrected"):
        ratios = []
        for _ in range(20):
            tp, ex = rng.uniform(0, 2 * math.pi), rng.uniform(-1, 1)
            err = [abs(cf.exact_integrand(1, 1, ex, tp, r) - cf.series_integrand(1, 1, ex, tp, r, v))
                   for r in (100.0, 200.0)]
            ratios.append(err[0] / err[1])
        print(f"1/r series ({v}): error ratio per doubling {min(ratios):.2f} .. {max(ratios):.2f}")


if __name__ == "__main__":
    main()
