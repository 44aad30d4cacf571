"""Grid projector metrics versus resolution and difference order."""
import argparse
import time

import numpy as np

from lwgauge.grid import (curl_test_field, divergence, gradient_test_field, mixed_test_field,
                          newton_potential, gradient)


def project(field, order):
    psi = newton_potential(divergence(field, order), field.spacing)
    return field.like(field.values + gradient(psi, field.spacing, order))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="17,25,33")
    args = ap.parse_args()
    print(f"{'n':>4} {'order':>5} {'reduction':>10} {'grad left':>10} {'curl change':>12} {'time s':>7}")
    for n in (int(s) for s in args.sizes.split(",")):
        for order in (2, 4):
            t0 = time.perf_counter()
            mixed = mixed_test_field(n)
            red = np.linalg.norm(divergence(mixed)) / np.linalg.norm(divergence(project(mixed, order)))
            g = gradient_test_field(n)
            left = np.max(np.abs(project(g, order).values)) / np.max(np.abs(g.values))
            c = curl_test_field(n)
            change = np.max(np.abs(project(c, order).values - c.values)) / np.max(np.abs(c.values))
            print(f"{n:>4} {order:>5} {red:>10.1f} {left:>10.4f} {change:>12.2e} {time.perf_counter() - t0:>7.1f}")


if __name__ == "__main__":
    main()
