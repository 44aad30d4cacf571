"""Null-ray sweeps for the three moving-charge classes, with fits and oracle comparison.

    python3 scripts/run_sweeps.py --outdir results
"""
import argparse
import math
from pathlib import Path

import numpy as np

from lwgauge import closed_forms as cf
from lwgauge.asymptotics import richardson_coefficient, same_order_verdict, sweep, write_sweep_csv
from lwgauge.trajectory import Trajectory


def cases(e):
    q = 1.0
    yield ("uniform", Trajectory.uniform(0.5, 1), 0.0,
           [("AC", cf.uniform_ac_leading(q, 0.5, 1, e), -1), ("dA", cf.uniform_delta_leading(q, 0.5, 1, e), -1)])
    yield ("oscillatory", Trajectory.oscillatory(0.5, 1.0), 1.0,
           [("AC", cf.osc_ac_leading(q, 0.5, 1.0, 1.0, 1.0, e), -1),
            ("dA", cf.osc_delta_leading(q, 0.5, e, 1.0, 1.0), -2)])
    yield ("combined", Trajectory.combined(0.5, 0.2, 1.0, -1), 0.7,
           [("AC", cf.combined_ac_leading(q, 0.5, -1, 0.2, 1.0, 1.0, 0.7, e), -1),
            ("dA", cf.combined_delta_leading(q, 0.5, -1, e), -1)])


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--direction", default="0.6,0,0.8")
    ap.add_argument("--count", type=int, default=12)
    args = ap.parse_args()

    e = np.array([float(x) for x in args.direction.split(",")])
    e /= np.linalg.norm(e)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, traj, t_ret, oracles in cases(e):
        sw = sweep(traj, t_ret, e, 1e3, 2.0, args.count)
        with open(out / f"{name}_sweep.csv", "w", newline="") as fh:
            write_sweep_csv(sw, fh)
        print(f"== {name} (t_ret={t_ret}, e={np.round(e, 4).tolist()})")
        for line in same_order_verdict(sw).lines():
            print("   " + line)
        for prefix, lo, power in oracles:
            for i, c in enumerate("xyz"):
                want = lo.coeff[i]
                if abs(want) < 1e-12:
                    continue
                got = richardson_coefficient(sw.column(prefix + c), sw.radii, power)
                print(f"   {prefix}{c}: r^{power} coefficient {got:+.8f}  oracle {want:+.8f}  "
                      f"rel {abs(got - want) / abs(want):.1e}")


if __name__ == "__main__":
    main()
