"""Command line front end: ``kerrscatter {amplitudes,sweep,classify,resonances}``.

Wavenumbers on the command line are k/K. Exit codes: 0 ok, 2 bad
configuration or arguments, 3 solver failure, 4 output not writable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import classify_amplitudes, classify_direct
from .config import ConfigError, load_config
from .errors import IntegrationError, PreconditionError, SpectralSingularityError
from .model import Method, PotentialSpec, resonant_wavenumbers
from .sweep import compute, sweep_csv, sweep_rows

EXIT_CONFIG, EXIT_SOLVER, EXIT_IO = 2, 3, 4
SOLVER_ERRORS = (IntegrationError, SpectralSingularityError, PreconditionError, ArithmeticError)


def _k_range(text):
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError("expected lo:hi:n") from None


def _m_list(text):
    try:
        ms = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers") from None
    if not ms or min(ms) < 1:
        raise argparse.ArgumentTypeError("m values must be positive")
    return ms


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kerrscatter", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    methods = [m.value for m in Method]

    a = sub.add_parser("amplitudes", help="R and T at one wavenumber")
    a.add_argument("--config", required=True)
    a.add_argument("--k", type=float, required=True, help="k/K")
    a.add_argument("--method", choices=methods, default="direct")
    a.add_argument("--json", action="store_true", help="print a JSON record")

    s = sub.add_parser("sweep", help="CSV of amplitudes over a k/K range")
    s.add_argument("--config", required=True)
    s.add_argument("--method", choices=methods, default="born2")
    s.add_argument("--k-range", type=_k_range, default=(0.5, 4.5, 801), help="lo:hi:n in k/K")
    s.add_argument("--m-list", type=_m_list, help="slab lengths in periods; one CSV per m")
    s.add_argument("--out", required=True, help="CSV path; with --m-list '{m}' is substituted")
    s.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("classify", help="reflectionless/transparent/invisible flags as JSON")
    c.add_argument("--config", required=True)
    c.add_argument("--k", type=float, required=True, help="k/K")
    c.add_argument("--method", choices=methods, default="direct")
    c.add_argument("--tol", type=float, help="default: numerics.classify_tol")

    r = sub.add_parser("resonances", help="resonant k = sK/2 for the configured slab")
    r.add_argument("--config", required=True)
    r.add_argument("--s-max", type=int, default=9)
    return p


def _amplitude_record(a, k_over_K):
    rec = {"k_over_K": k_over_K, "method": a.method.value}
    for name in ("Rr", "Rl", "Tr", "Tl"):
        z = getattr(a, name)
        rec[name] = {"re": z.real + 0.0, "im": z.imag + 0.0, "abs": abs(z)}
    if a.aux:
        rec["aux"] = {key: {"re": v.real, "im": v.imag} for key, v in a.aux.items()}
    return rec


def cmd_amplitudes(args, cfg):
    a = compute(cfg, args.k * cfg.K, Method(args.method))
    rec = _amplitude_record(a, args.k)
    if args.json:
        print(json.dumps(rec, indent=2))
        return
    print(f"# k/K = {args.k:.17g}  method = {a.method.value}")
    print(f"{'':8s}{'Re':>26s}{'Im':>26s}{'abs':>26s}")
    for name in ("Rr", "Rl", "Tr", "Tl"):
        z = rec[name]
        print(f"{name:8s}{z['re']:26.17g}{z['im']:26.17g}{z['abs']:26.17g}")
    for key, v in rec.get("aux", {}).items():
        print(f"{key:8s}{v['re']:26.17g}{v['im']:26.17g}")


def cmd_sweep(args, cfg):
    lo, hi, n = args.k_range
    if not lo > 0 or hi < lo or n < 2:
        raise ConfigError("--k-range needs 0 < lo <= hi and n >= 2")
    targets = [(None, cfg, args.out)]
    if args.m_list:
        if len(args.m_list) > 1 and "{m}" not in args.out:
            stem = Path(args.out)
            fmt = str(stem.with_name(f"{stem.stem}_m{{m}}{stem.suffix}"))
        else:
            fmt = args.out
        targets = [(m, cfg.with_m(m), fmt.replace("{m}", str(m))) for m in args.m_list]
    for _, c, out in targets:
        text = sweep_csv(sweep_rows(c, lo, hi, n, Method(args.method), args.workers))
        try:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"kerrscatter: cannot write {out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(out)


def cmd_classify(args, cfg):
    tol = args.tol if args.tol is not None else cfg.classify_tol
    k = args.k * cfg.K
    a = compute(cfg, k, Method(args.method))
    cl = classify_direct(a, k, tol) if a.method is Method.DIRECT else None
    source = "transforms"
    if cl is None:
        cl, source = classify_amplitudes(a, tol), "amplitudes"
    rec = {"k_over_K": args.k, "method": a.method.value, "tested": source}
    rec.update(cl.to_record())
    print(json.dumps(rec, indent=2))


def cmd_resonances(args, cfg):
    pot = PotentialSpec(cfg.L, cfg.K, 0.0, dict(cfg.coefficients))
    for r in resonant_wavenumbers(pot, args.s_max):
        print(f"s={r.s} m={r.m} k={r.k:.17g} k_over_K={r.k / cfg.K:.17g}")


COMMANDS = {
    "amplitudes": cmd_amplitudes,
    "sweep": cmd_sweep,
    "classify": cmd_classify,
    "resonances": cmd_resonances,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"kerrscatter: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args, cfg) or 0
    except ConfigError as exc:
        print(f"kerrscatter: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SOLVER_ERRORS as exc:
        print(f"kerrscatter: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
