"""|R^{r/l}| and |T^{r/l} - 1| of the three-harmonic Kerr slab over k/K in [0.5, 4.5].

Writes a sweep CSV and prints the local minima of |Rr| and |Rl|.

    python3 scripts/reflection_sweep.py --config configs/three_harmonic.toml --out results/reflection.csv
"""

import argparse
from pathlib import Path

import numpy as np

from kerrscatter.config import load_config
from kerrscatter.model import Method
from kerrscatter.sweep import read_sweep, sweep_csv, sweep_rows


def local_minima(x, y):
    i = np.flatnonzero((y[1:-1] < y[:-2]) & (y[1:-1] <= y[2:])) + 1
    return x[i]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", default="configs/three_harmonic.toml")
    p.add_argument("--method", default="born2", choices=[m.value for m in Method])
    p.add_argument("--points", type=int, default=801)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="results/reflection.csv")
    args = p.parse_args()

    cfg = load_config(args.config)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(sweep_csv(sweep_rows(cfg, 0.5, 4.5, args.points, Method(args.method), args.workers)))

    cols = read_sweep(out)
    k = cols["k_over_K"]
    print(f"wrote {out} ({k.size} rows)")
    print("|Rr| minima at k/K:", np.round(local_minima(k, cols["abs_Rr"]), 3).tolist())
    print("|Rl| minima at k/K:", np.round(local_minima(k, cols["abs_Rl"]), 3).tolist())
    gap = np.max(np.abs(cols["abs_Tr_minus_1"] - cols["abs_Tl_minus_1"]))
    print(f"max ||Tr - 1| - |Tl - 1||: {gap:.3e}")


if __name__ == "__main__":
    main()
