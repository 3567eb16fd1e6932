"""
TOML run configuration.

All numbers are dimensionless in units K = 1 unless ``K`` is given. The
slab length is either ``L`` or ``m`` periods (L = 2 pi m / K). Couplings
are given either as fixed values (``strength``, ``gamma``) or scaled by
k^2 at every wavenumber (``zhat``, ``gamma_hat``), which is how the
dimensionless curves are produced.

    [potential]
    m = 1
    zhat = 1e-2
    coefficients = [[-2, 0.50, 0.0], [4, 0.35, 0.0], [-6, -0.15, 0.0]]  # n, Re c_n, Im c_n

    [nonlinearity]
    kind = "kerr"
    gamma_hat = 1e-3

    [incidence]
    N_minus = [1.0, 0.0]
    N_plus = [1.0, 0.0]

    [numerics]
    grid_size = 4096
    tol = 1e-10
    classify_tol = 1e-6
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace
from typing import Optional

from .model import NonlinearitySpec, PotentialSpec

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScatteringConfig:
    coefficients: tuple  # ((n, c_n), ...)
    K: float = 1.0
    L: float = 2 * math.pi
    zhat: Optional[float] = None
    strength: Optional[float] = None
    gamma_hat: Optional[float] = None
    gamma: Optional[float] = None
    N_minus: complex = 1.0
    N_plus: complex = 1.0
    grid_size: int = 4096
    tol: float = 1e-10
    classify_tol: float = 1e-6

    @property
    def m(self) -> float:
        return self.L * self.K / (2 * math.pi)

    def with_m(self, m: int) -> "ScatteringConfig":
        """Same configuration on a slab of m periods; the grid keeps its density."""
        scale = m / self.m
        grid = max(64, int(round(self.grid_size * max(1.0, scale))))
        grid += grid % 2
        return replace(self, L=2 * math.pi * m / self.K, grid_size=grid)

    def specs_at(self, k: float) -> tuple[PotentialSpec, NonlinearitySpec]:
        z = self.zhat * k * k if self.zhat is not None else self.strength
        g = self.gamma_hat * k * k if self.gamma_hat is not None else self.gamma
        pot = PotentialSpec(self.L, self.K, z, dict(self.coefficients))
        return pot, NonlinearitySpec(g)


def _complex(value, name):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(f"{name}: expected a number or [re, im]")


def _one_of(section, a, b, where):
    if (a in section) == (b in section):
        raise ConfigError(f"[{where}] needs exactly one of {a!r} / {b!r}")
    return (float(section[a]), None) if a in section else (None, float(section[b]))


def parse_config(data: dict) -> ScatteringConfig:
    try:
        pot = data["potential"]
    except KeyError:
        raise ConfigError("missing [potential] section") from None
    nl = data.get("nonlinearity", {})
    inc = data.get("incidence", {})
    num = data.get("numerics", {})

    K = float(pot.get("K", 1.0))
    if "L" in pot and "m" in pot:
        raise ConfigError("[potential] give L or m, not both")
    L = float(pot["L"]) if "L" in pot else 2 * math.pi * float(pot.get("m", 1)) / K

    coeffs = []
    for entry in pot.get("coefficients", []):
        if len(entry) not in (2, 3):
            raise ConfigError(f"coefficient entry {entry!r}: expected [n, re, im]")
        n = entry[0]
        if isinstance(n, float) and n.is_integer():
            n = int(n)
        if not isinstance(n, int) or isinstance(n, bool):
            raise ConfigError(f"coefficient index {n!r} is not an integer")
        coeffs.append((n, complex(float(entry[1]), float(entry[2]) if len(entry) == 3 else 0.0)))

    if "zhat" in pot or "strength" in pot:
        zhat, strength = _one_of(pot, "zhat", "strength", "potential")
    else:
        zhat, strength = None, 0.0

    kind = nl.get("kind", "kerr")
    if kind != "kerr":
        raise ConfigError(f"nonlinearity kind {kind!r}: only 'kerr' is configurable")
    if "gamma_hat" in nl or "gamma" in nl:
        gamma_hat, gamma = _one_of(nl, "gamma_hat", "gamma", "nonlinearity")
    else:
        gamma_hat, gamma = None, 0.0

    cfg = ScatteringConfig(
        coefficients=tuple(coeffs),
        K=K,
        L=L,
        zhat=zhat,
        strength=strength,
        gamma_hat=gamma_hat,
        gamma=gamma,
        N_minus=_complex(inc.get("N_minus", 1.0), "N_minus"),
        N_plus=_complex(inc.get("N_plus", 1.0), "N_plus"),
        grid_size=int(num.get("grid_size", 4096)),
        tol=float(num.get("tol", 1e-10)),
        classify_tol=float(num.get("classify_tol", 1e-6)),
    )
    # validate eagerly so bad files fail at load time
    try:
        cfg.specs_at(1.0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.N_minus == 0 or cfg.N_plus == 0:
        raise ConfigError("incidence amplitudes must be nonzero")
    if cfg.grid_size < 64 or not cfg.tol > 0 or not cfg.classify_tol > 0:
        raise ConfigError("numerics: grid_size >= 64 and positive tolerances required")
    return cfg


def load_config(path) -> ScatteringConfig:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return parse_config(data)
