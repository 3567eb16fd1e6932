"""Single-point evaluation by method, k sweeps and their CSV layout."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from .born import born1_fourier, born2_general, born2_resonance
from .config import ScatteringConfig
from .direct import solve_direct
from .model import Amplitudes, Method, PotentialSpec, resonant_wavenumbers

CSV_HEADER = [
    "k_over_K",
    "Re_Rr", "Im_Rr", "Re_Rl", "Im_Rl", "Re_Tr", "Im_Tr", "Re_Tl", "Im_Tl",
    "abs_Rr", "abs_Rl", "abs_Tr_minus_1", "abs_Tl_minus_1", "abs_Tr_minus_Tl",
]  # fmt: skip


def compute(cfg: ScatteringConfig, k: float, method: Method) -> Amplitudes:
    """Amplitudes at absolute wavenumber k."""
    method = Method(method)
    pot, nl = cfg.specs_at(k)
    args = (pot, nl, k, cfg.N_minus, cfg.N_plus)
    if method is Method.DIRECT:
        return solve_direct(*args, grid_size=cfg.grid_size, tol=cfg.tol).amplitudes
    if method is Method.BORN1:
        return born1_fourier(*args)
    if method is Method.BORN2:
        return born2_general(*args, grid_size=cfg.grid_size)
    return born2_resonance(*args)


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # no "-0"


def row(k_over_K: float, a: Amplitudes) -> list[str]:
    vals = [k_over_K]
    for z in (a.Rr, a.Rl, a.Tr, a.Tl):
        vals += [z.real, z.imag]
    vals += [abs(a.Rr), abs(a.Rl), abs(a.Tr - 1), abs(a.Tl - 1), abs(a.Tr - a.Tl)]
    return [_fmt(v) for v in vals]


def sweep_points(cfg: ScatteringConfig, lo: float, hi: float, n: int, method: Method) -> np.ndarray:
    """k/K values of a sweep; the resonance method only visits resonant k."""
    if not lo > 0 or hi < lo or n < 2:
        raise ValueError("k range needs 0 < lo <= hi and at least 2 points")
    if Method(method) is Method.RESONANCE:
        pot = PotentialSpec(cfg.L, cfg.K, 0.0, dict(cfg.coefficients))
        s_max = int(np.floor(2 * hi + 1e-9))
        if s_max < 1:
            return np.array([])
        ks = np.array([r.s / 2 for r in resonant_wavenumbers(pot, s_max)])
        return ks[ks >= lo - 1e-12]
    return np.linspace(lo, hi, n)


def _row_at(cfg, method, k_over_K):
    return row(k_over_K, compute(cfg, k_over_K * cfg.K, method))


def sweep_rows(cfg, lo, hi, n, method, workers: int = 1) -> list[list[str]]:
    ks = sweep_points(cfg, lo, hi, n, method)
    job = partial(_row_at, cfg, Method(method))
    if workers <= 1:
        return [job(k) for k in ks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, ks, chunksize=max(1, len(ks) // (4 * workers))))


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)
    return buf.getvalue()


def read_sweep(path) -> dict:
    """Columns of a sweep CSV as float arrays."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    return {name: np.atleast_1d(data[name]) for name in data.dtype.names}
