"""Residual between the direct solver and second-order Born as the couplings shrink.

Couplings zhat = eps, ghat = eps / 10 at random k in [0.5, 4.5]; the
residual should fall by about 8x per halving of eps.
"""

import argparse

import numpy as np

from kerrscatter import NonlinearitySpec, PotentialSpec, born2_general, solve_direct

THREE_HARMONIC = {-2: 0.50, 4: 0.35, -6: -0.15}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--seed", type=int, default=20240607)
    p.add_argument("--eps", type=float, nargs="+", default=[4e-2, 2e-2, 1e-2, 5e-3, 2.5e-3])
    args = p.parse_args()

    ks = np.random.default_rng(args.seed).uniform(0.5, 4.5, args.points)
    prev = None
    print(f"{'eps':>10s}{'max residual':>16s}{'C = res/eps^3':>16s}{'drop':>8s}")
    for eps in args.eps:
        res = 0.0
        for k in ks:
            pot = PotentialSpec(2 * np.pi, 1.0, eps * k * k, THREE_HARMONIC)
            nl = NonlinearitySpec(eps / 10 * k * k)
            res = max(res, solve_direct(pot, nl, k).amplitudes.max_abs_diff(born2_general(pot, nl, k)))
        drop = f"{prev / res:8.2f}" if prev else ""
        print(f"{eps:10.2e}{res:16.4e}{res / eps**3:16.3f}{drop}")
        prev = res


if __name__ == "__main__":
    main()
