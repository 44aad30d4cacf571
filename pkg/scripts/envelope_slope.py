"""Decay of the combined-minus-uniform integrand for several observer positions."""
import argparse

from lwgauge.acceptance import residual_envelope_slope
from lwgauge.trajectory import Trajectory

OBSERVERS = [(20, 1, 0), (-20, 1, 0), (0, 5, 5), (3, 4, 0), (100, 10, 0), (0, 50, 0)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v", type=float, default=0.5)
    ap.add_argument("--a", type=float, default=0.3)
    ap.add_argument("--omega", type=float, default=1.0)
    args = ap.parse_args()
    for eps in (1, -1):
        traj = Trajectory.combined(args.v, args.a, args.omega, eps)
        for r in OBSERVERS:
            lo = residual_envelope_slope(traj, r, 1e2, 1e4)
            hi = residual_envelope_slope(traj, r, 1e4, 1e6)
            print(f"eps={eps:+d} r={r!s:>14}  slope[1e2,1e4] {lo:+.4f}  slope[1e4,1e6] {hi:+.4f}")


if __name__ == "__main__":
    main()
