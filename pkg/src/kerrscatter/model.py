"""
Potentials, nonlinearities, incidence data and amplitude records.

A slab occupies [0, L]. Inside it the wave equation reads

    -psi'' + z f(x) psi + gamma F(|psi|) psi = k^2 psi,

and both the potential z f(x) and the nonlinear term vanish outside the
slab. ``f`` is either a finite Fourier series in exp(i n K x) (a locally
periodic profile) or a tabulated complex profile on uniform nodes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, NamedTuple, Optional

import numpy as np

from .errors import DomainError, PreconditionError

INTEGER_RTOL = 1e-9
F_BOUND_WARN = 10.0


@dataclass(frozen=True)
class PotentialSpec:
    """Finite-range potential v(x) = strength * f(x) on [0, L].

    Exactly one of ``coefficients`` (map n -> c_n of exp(i n K x)) and
    ``sampled_profile`` (complex values of f on a uniform grid covering
    [0, L], endpoints included) must be given.
    """

    L: float
    K: float
    strength: float = 1.0
    coefficients: Optional[Mapping[int, complex]] = None
    sampled_profile: Optional[np.ndarray] = None

    def __post_init__(self):
        if not (self.L > 0 and math.isfinite(self.L)):
            raise DomainError(f"L must be positive and finite, got {self.L}")
        if not (self.K > 0 and math.isfinite(self.K)):
            raise DomainError(f"K must be positive and finite, got {self.K}")
        if not math.isfinite(self.strength):
            raise DomainError("strength must be finite")
        if (self.coefficients is None) == (self.sampled_profile is None):
            raise DomainError("give exactly one of coefficients / sampled_profile")

        if self.coefficients is not None:
            coeffs = {int(n): complex(c) for n, c in dict(self.coefficients).items()}
            if not all(np.isfinite(c) for c in coeffs.values()):
                raise DomainError("Fourier coefficients must be finite")
            object.__setattr__(self, "coefficients", coeffs)
            bound = sum(abs(c) for c in coeffs.values())
        else:
            prof = np.array(self.sampled_profile, dtype=complex)
            if prof.ndim != 1 or prof.size < 2:
                raise DomainError("sampled_profile needs at least 2 nodes")
            if not np.all(np.isfinite(prof)):
                raise DomainError("sampled_profile must be finite")
            prof.setflags(write=False)
            object.__setattr__(self, "sampled_profile", prof)
            bound = float(np.max(np.abs(prof)))

        if bound > F_BOUND_WARN:
            warnings.warn(
                f"max|f| may reach {bound:.3g}; the perturbative formulas assume |f| = O(1)",
                stacklevel=3,
            )

    @property
    def is_fourier(self) -> bool:
        return self.coefficients is not None

    @property
    def period(self) -> float:
        return 2 * math.pi / self.K

    def with_strength(self, strength: float) -> "PotentialSpec":
        return PotentialSpec(self.L, self.K, strength, self.coefficients, self.sampled_profile)

    def with_length(self, L: float) -> "PotentialSpec":
        if not self.is_fourier:
            raise DomainError("only Fourier-form potentials can be stretched")
        return PotentialSpec(L, self.K, self.strength, self.coefficients)

    def c(self, n: int) -> complex:
        """Fourier coefficient c_n (zero off the stored support)."""
        if self.coefficients is None:
            raise DomainError("sampled potentials have no Fourier coefficients")
        return self.coefficients.get(n, 0j)


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("x must be finite")
    return x


def eval_f(spec: PotentialSpec, x):
    """Profile f at ``x`` (scalar or array), zero outside [0, L]."""
    xa = _check_x(x)
    inside = (xa >= 0.0) & (xa <= spec.L)
    if spec.is_fourier:
        out = np.zeros(xa.shape, dtype=complex)
        for n, c in spec.coefficients.items():
            out += c * np.exp(1j * n * spec.K * xa)
    else:
        prof = spec.sampled_profile
        nodes = np.linspace(0.0, spec.L, prof.size)
        out = np.interp(xa, nodes, prof.real) + 1j * np.interp(xa, nodes, prof.imag)
    out = np.where(inside, out, 0j)
    return complex(out) if out.ndim == 0 else out


def eval_v(spec: PotentialSpec, x):
    return spec.strength * eval_f(spec, x)


def potential_from_permittivity(eps, k: float, L: float, K: Optional[float] = None) -> PotentialSpec:
    """Optical potential v = k^2 (1 - eps) of a tabulated permittivity on [0, L].

    The strength is absorbed into the profile (strength = 1).
    """
    eps = np.asarray(eps, dtype=complex)
    if eps.size == 0:
        raise DomainError("empty permittivity table")
    if not k > 0:
        raise DomainError("k must be positive")
    if eps.size == 1:
        eps = np.repeat(eps.reshape(1), 2)
    return PotentialSpec(
        L=L,
        K=K if K is not None else 2 * math.pi / L,
        strength=1.0,
        sampled_profile=k**2 * (1.0 - eps.ravel()),
    )


def period_count(spec: PotentialSpec, rtol: float = INTEGER_RTOL) -> int:
    """Integer m with L = m * (2 pi / K); raises if L is not a whole number of periods."""
    ratio = spec.L / spec.period
    m = round(ratio)
    if m < 1 or abs(ratio - m) > rtol * max(1.0, abs(ratio)):
        raise PreconditionError(f"L / period = {ratio!r} is not a positive integer")
    return int(m)


class Resonance(NamedTuple):
    s: int
    k: float
    m: int


def resonant_wavenumbers(spec: PotentialSpec, s_max: int) -> list[Resonance]:
    """Wavenumbers k = s K / 2 = m s pi / L, s = 1..s_max."""
    if s_max < 1:
        raise DomainError("s_max must be >= 1")
    m = period_count(spec)
    return [Resonance(s, s * spec.K / 2, m) for s in range(1, s_max + 1)]


def resonance_index(spec: PotentialSpec, k: float, rtol: float = INTEGER_RTOL) -> tuple[int, int]:
    """(s, m) for a resonant k, or PreconditionError."""
    m = period_count(spec, rtol)
    ratio = 2 * k / spec.K
    s = round(ratio)
    if s < 1 or abs(ratio - s) > rtol * max(1.0, ratio):
        raise PreconditionError(f"2k/K = {ratio!r} is not a positive integer")
    return int(s), m


@dataclass(frozen=True)
class NonlinearitySpec:
    """gamma * F(|psi|); ``kind`` is "kerr" (F = |psi|^2) or "custom" with ``func``."""

    gamma: float = 0.0
    kind: str = "kerr"
    func: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, compare=False)

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise DomainError("gamma must be finite")
        if self.kind not in ("kerr", "custom"):
            raise DomainError(f"unknown nonlinearity kind {self.kind!r}")
        if self.kind == "custom" and self.func is None:
            raise DomainError("custom nonlinearity needs func")

    @property
    def is_kerr(self) -> bool:
        return self.kind == "kerr"

    def F(self, modulus):
        """F evaluated at |psi| (not at psi)."""
        if self.is_kerr:
            return modulus * modulus
        return self.func(modulus)

    def with_gamma(self, gamma: float) -> "NonlinearitySpec":
        return NonlinearitySpec(gamma, self.kind, self.func)


LINEAR = NonlinearitySpec(0.0)


class Direction(str, Enum):
    RIGHT = "right"  # incident from the right, integrated from x = 0 (xi)
    LEFT = "left"  # incident from the left, integrated from x = L (zeta)


@dataclass(frozen=True)
class Incidence:
    k: float
    direction: Direction
    amplitude: complex = 1.0

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise DomainError(f"k must be positive, got {self.k}")
        a = complex(self.amplitude)
        if a == 0 or not np.isfinite(a):
            raise DomainError("incidence amplitude must be nonzero and finite")
        object.__setattr__(self, "amplitude", a)
        object.__setattr__(self, "direction", Direction(self.direction))


class Method(str, Enum):
    DIRECT = "direct"
    BORN1 = "born1"
    BORN2 = "born2"
    RESONANCE = "born2-resonance"


@dataclass(frozen=True)
class Amplitudes:
    """Reflection/transmission amplitudes from the right (r) and left (l).

    ``aux`` holds the source transforms X(0), X(2k), Y(0), Y(-2k) when the
    computation went through them.
    """

    Rr: complex
    Rl: complex
    Tr: complex
    Tl: complex
    method: Method
    aux: Optional[Mapping[str, complex]] = None

    def __post_init__(self):
        for name in ("Rr", "Rl", "Tr", "Tl"):
            v = complex(getattr(self, name))
            if not np.isfinite(v):
                raise ArithmeticError(f"{name} is not finite")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "method", Method(self.method))
        if self.method is Method.DIRECT and not self.aux:
            raise ValueError("direct amplitudes must carry the source transforms")

    def as_array(self) -> np.ndarray:
        return np.array([self.Rr, self.Rl, self.Tr, self.Tl])

    def max_abs_diff(self, other: "Amplitudes") -> float:
        return float(np.max(np.abs(self.as_array() - other.as_array())))
