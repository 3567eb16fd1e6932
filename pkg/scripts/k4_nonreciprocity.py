"""Reflection nonreciprocity of the three-harmonic Kerr slab at k = 4K by every method.

The closed-form second-order values keep the orders zhat, ghat, ghat*zhat
and zhat^2; the quadrature value is shown both with that truncation and
with the ghat^2 terms included, next to the nonperturbative solver.
"""

import argparse

from kerrscatter.born import born1_fourier, born2_general, born2_resonance
from kerrscatter.config import load_config
from kerrscatter.direct import solve_direct


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", default="configs/three_harmonic.toml")
    p.add_argument("--k", type=float, default=4.0, help="k/K")
    args = p.parse_args()

    cfg = load_config(args.config)
    k = args.k * cfg.K
    pot, nl = cfg.specs_at(k)
    N = (cfg.N_minus, cfg.N_plus)
    runs = {
        "born1": born1_fourier(pot, nl, k, *N),
        "born2 closed form": born2_resonance(pot, nl, k, *N),
        "born2 closed form, uncorrected": born2_resonance(pot, nl, k, *N, uncorrected=True),
        "born2 quadrature, no ghat^2": born2_general(pot, nl, k, *N, cfg.grid_size, truncate="closed-form"),
        "born2 quadrature": born2_general(pot, nl, k, *N, cfg.grid_size),
        "direct": solve_direct(pot, nl, k, *N, cfg.grid_size, cfg.tol).amplitudes,
    }
    print(f"{'method':32s}{'|Rr|':>12s}{'|Rl|':>12s}{'|Rl/Rr|':>10s}{'|Rl-Rr|':>12s}{'|Tr-Tl|':>12s}")
    for name, a in runs.items():
        ratio = abs(a.Rl / a.Rr) if a.Rr else float("inf")
        print(
            f"{name:32s}{abs(a.Rr):12.4e}{abs(a.Rl):12.4e}{ratio:10.4f}"
            f"{abs(a.Rl - a.Rr):12.4e}{abs(a.Tr - a.Tl):12.4e}"
        )


if __name__ == "__main__":
    main()
