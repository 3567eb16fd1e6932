"""|T^r - T^l| of the three-harmonic Kerr slab for several slab lengths m.

One CSV per m; the table printed at the end lists |Tr - Tl| at the
resonances k = sK/2 for each m.

    python3 scripts/reciprocity_vs_length.py --m 1 5 10 --out results/reciprocity.csv
"""

import argparse
from pathlib import Path

import numpy as np

from kerrscatter.config import load_config
from kerrscatter.model import Method
from kerrscatter.sweep import read_sweep, sweep_csv, sweep_rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", default="configs/three_harmonic.toml")
    p.add_argument("--m", type=int, nargs="+", default=[1, 5, 10])
    p.add_argument("--points", type=int, default=801)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="results/reciprocity.csv")
    args = p.parse_args()

    cfg = load_config(args.config)
    base = Path(args.out)
    base.parent.mkdir(parents=True, exist_ok=True)
    at_res = {}
    for m in args.m:
        out = base.with_name(f"{base.stem}_m{m}{base.suffix}")
        out.write_text(sweep_csv(sweep_rows(cfg.with_m(m), 0.5, 4.5, args.points, Method.BORN2, args.workers)))
        cols = read_sweep(out)
        k = cols["k_over_K"]
        mask = np.isclose(2 * k, np.round(2 * k), atol=1e-9)
        at_res[m] = dict(zip(np.round(k[mask], 3), cols["abs_Tr_minus_Tl"][mask]))
        print(f"wrote {out}")

    ks = sorted(at_res[args.m[0]])
    print("k/K   " + "".join(f"{'m=' + str(m):>13s}" for m in args.m))
    for k in ks:
        print(f"{k:<6g}" + "".join(f"{at_res[m][k]:13.4e}" for m in args.m))


if __name__ == "__main__":
    main()
