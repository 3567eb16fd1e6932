"""
Born-series amplitudes for a slab with a confined Kerr nonlinearity.

First order: the normalized fields are replaced by 1, so the sources are
X1 = g- + z f and Y1 = g+ + z f with g-/+ = gamma F(|N-/+|), and the
amplitudes follow from their transforms (closed form for Fourier profiles).

Second order: the first-order fields xi_hat1, zeta_hat1 are fed back into
the sources. ``born2_general`` does this numerically at any k;
``born2_resonance`` evaluates the closed-form coefficients that hold at
k = s K / 2 with L = m 2 pi / K.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .direct import DEFAULT_GRID, FieldSolution
from .errors import DomainError, PreconditionError
from .model import (
    Amplitudes,
    Direction,
    Incidence,
    Method,
    NonlinearitySpec,
    PotentialSpec,
    eval_f,
    resonance_index,
)
from .quadrature import cumulative, fourier_transform, integrate, uniform_grid

LIMIT_RTOL = 1e-8


def exp_integral(theta: float, L: float, scale: float = 1.0) -> complex:
    """int_0^L exp(i theta x) dx, with the theta -> 0 limit taken explicitly.

    Below |theta| < LIMIT_RTOL * scale the removable singularity of
    (exp(i theta L) - 1) / (i theta) is replaced by its Taylor expansion.
    """
    if abs(theta) < LIMIT_RTOL * scale:
        return L + 0.5j * theta * L**2 - theta**2 * L**3 / 6
    half = 0.5 * theta * L
    # exp(i t L) - 1 = 2i sin(t L / 2) exp(i t L / 2): no cancellation near the zeros
    return 2 * np.sin(half) * cmath.exp(1j * half) / theta


def _needs_kerr(nl: NonlinearitySpec, what: str):
    if not nl.is_kerr:
        raise DomainError(f"{what} is derived for a Kerr nonlinearity")


def _couplings(nl: NonlinearitySpec, N_minus, N_plus):
    """gamma F(|N-|), gamma F(|N+|): the constant nonlinear sources at first order."""
    return (
        complex(nl.gamma * nl.F(abs(complex(N_minus)))),
        complex(nl.gamma * nl.F(abs(complex(N_plus)))),
    )


def _first_order_transforms(pot: PotentialSpec, nl, k, N_minus, N_plus, grid_size=None):
    """X1(0), X1(2k), Y1(0), Y1(-2k) for X1 = g- + z f, Y1 = g+ + z f.

    Fourier profiles are integrated term by term in closed form unless
    ``grid_size`` is given, in which case (and for sampled profiles) the
    f-part is integrated by Simpson's rule.
    """
    gm, gp = _couplings(nl, N_minus, N_plus)
    L, K, z = pot.L, pot.K, pot.strength

    if pot.is_fourier and grid_size is None:

        def f_transform(q):
            return sum(c * exp_integral(n * K - q, L, K) for n, c in pot.coefficients.items())

    else:
        x = uniform_grid(L, grid_size or DEFAULT_GRID)
        fx = eval_f(pot, x)

        def f_transform(q):
            return complex(fourier_transform(fx, x, q))

    f0 = z * f_transform(0.0)
    return {
        "X(0)": gm * L + f0,
        "X(2k)": gm * exp_integral(-2 * k, L, K) + z * f_transform(2 * k),
        "Y(0)": gp * L + f0,
        "Y(-2k)": gp * exp_integral(2 * k, L, K) + z * f_transform(-2 * k),
    }


def _first_order_amplitudes(tr, k, method) -> Amplitudes:
    d = 2j * k
    return Amplitudes(
        Rr=tr["X(2k)"] / d,
        Rl=tr["Y(-2k)"] / d,
        Tr=1 + tr["X(0)"] / d,
        Tl=1 + tr["Y(0)"] / d,
        method=method,
        aux=tr,
    )


def born1_fourier(
    pot: PotentialSpec, nl: NonlinearitySpec, k: float, N_minus=1.0, N_plus=1.0
) -> Amplitudes:
    """First Born amplitudes of a Fourier-form profile from the closed-form sums."""
    if not pot.is_fourier:
        raise DomainError("born1_fourier needs a Fourier-form potential")
    return _first_order_amplitudes(_first_order_transforms(pot, nl, k, N_minus, N_plus), k, Method.BORN1)


def born1_general(
    pot: PotentialSpec,
    nl: NonlinearitySpec,
    k: float,
    N_minus=1.0,
    N_plus=1.0,
    grid_size: int | None = None,
) -> Amplitudes:
    """First Born amplitudes for any profile.

    Sampled profiles (or any profile when ``grid_size`` is set) are
    integrated numerically; F is evaluated at |N-/+| so custom
    nonlinearities are accepted.
    """
    if not pot.is_fourier and grid_size is None:
        grid_size = DEFAULT_GRID
    return _first_order_amplitudes(
        _first_order_transforms(pot, nl, k, N_minus, N_plus, grid_size), k, Method.BORN1
    )


def _correction(source, x, k, which):
    """First-order correction delta (and delta') of xi_hat or zeta_hat for a source S.

    xi_hat1   = 1 + (1/k) int_0^x sin(k(x-x')) e^{ ik(x-x')} S(x') dx'
    zeta_hat1 = 1 + (1/k) int_L^x sin(k(x-x')) e^{-ik(x-x')} S(x') dx'

    Using sin(t) e^{+-it} = +-(e^{+-2it} - 1) / (2i) both reduce to two
    running integrals.
    """
    e = np.exp(2j * k * x)
    if which == "xi":
        I0 = cumulative(source, x)
        I1 = cumulative(source / e, x)
        return (e * I1 - I0) / (2j * k), e * I1
    J0 = cumulative(source, x)
    J1 = cumulative(source * e, x)
    J0, J1 = J0 - J0[-1], J1 - J1[-1]
    return (J0 - J1 / e) / (2j * k), J1 / e


def first_order_fields(
    pot: PotentialSpec, nl: NonlinearitySpec, inc: Incidence, grid_size: int = DEFAULT_GRID
) -> FieldSolution:
    """xi_hat1 (right incidence) or zeta_hat1 (left incidence) on the uniform grid."""
    x = uniform_grid(pot.L, grid_size)
    k, N = inc.k, inc.amplitude
    source = nl.gamma * complex(nl.F(abs(N))) + pot.strength * eval_f(pot, x)
    which = "xi" if inc.direction is Direction.RIGHT else "zeta"
    delta, ddelta = _correction(source, x, k, which)
    return FieldSolution(x, 1.0 + delta, ddelta, which, inc, hat=True)


def _second_order_side(pot, k, g, x, fx, which, truncate):
    """Second-order reflection and transmission for one side.

    Returns (R, T, transforms) where the transforms are those of the
    first-order source.
    """
    z = pot.strength
    q = 2 * k if which == "xi" else -2 * k
    d = 2j * k
    ones = np.ones_like(x, dtype=complex)
    A0, Aq = complex(integrate(ones, x)), complex(fourier_transform(ones, x, q))
    B0, Bq = complex(integrate(fx, x)), complex(fourier_transform(fx, x, q))
    X1_0, X1_q = g * A0 + z * B0, g * Aq + z * Bq

    dg, _ = _correction(ones, x, k, which)
    df, _ = _correction(fx, x, k, which)

    if truncate == "none":
        hat = 1.0 + g * dg + z * df
        src2 = (g * np.abs(hat) ** 2 + z * fx) * hat
        S0, Sq = complex(integrate(src2, x)), complex(fourier_transform(src2, x, q))
        R = Sq / d - X1_q * X1_0 / (4 * k * k)
        T = 1 + S0 / d - X1_0 * X1_0 / (4 * k * k)
        return R, T, (X1_0, X1_q)

    # Kerr source [g |1 + delta|^2 + z f](1 + delta) sorted by order in (g, z)
    p_gg = 2 * dg.real + dg
    p_gz = 2 * df.real + df + fx * dg
    p_zz = fx * df

    def tr(v, qq):
        return complex(fourier_transform(v, x, qq))

    gg = g * g if truncate == "second" else 0.0
    second_0 = gg * tr(p_gg, 0.0) + g * z * tr(p_gz, 0.0) + z * z * tr(p_zz, 0.0)
    second_q = gg * tr(p_gg, q) + g * z * tr(p_gz, q) + z * z * tr(p_zz, q)
    prod_q0 = gg * Aq * A0 + g * z * (Aq * B0 + Bq * A0) + z * z * Bq * B0
    prod_00 = gg * A0 * A0 + 2 * g * z * A0 * B0 + z * z * B0 * B0

    R = (X1_q + second_q) / d - prod_q0 / (4 * k * k)
    T = 1 + (X1_0 + second_0) / d - prod_00 / (4 * k * k)
    return R, T, (X1_0, X1_q)


def born2_general(
    pot: PotentialSpec,
    nl: NonlinearitySpec,
    k: float,
    N_minus=1.0,
    N_plus=1.0,
    grid_size: int = DEFAULT_GRID,
    truncate: str = "second",
) -> Amplitudes:
    """Second Born amplitudes at arbitrary k by quadrature.

    ``truncate`` selects what is kept of the second-order source
    [gamma |N xi_hat1|^2 + z f] xi_hat1:

    * "second": every term through second order in (gamma, z);
    * "closed-form": as "second" without the gamma^2 terms, which is the
      truncation of the closed-form resonance coefficients;
    * "none":   the source exactly as written, including its stray
      third- and fourth-order pieces.
    """
    _needs_kerr(nl, "born2_general")
    if truncate not in ("second", "closed-form", "none"):
        raise DomainError(f"unknown truncation {truncate!r}")
    if not k > 0:
        raise DomainError("k must be positive")
    x = uniform_grid(pot.L, grid_size)
    fx = eval_f(pot, x)
    gm = nl.gamma * abs(complex(N_minus)) ** 2
    gp = nl.gamma * abs(complex(N_plus)) ** 2
    Rr, Tr, (X0, X2) = _second_order_side(pot, k, gm, x, fx, "xi", truncate)
    Rl, Tl, (Y0, Ym2) = _second_order_side(pot, k, gp, x, fx, "zeta", truncate)
    aux = {"X1(0)": X0, "X1(2k)": X2, "Y1(0)": Y0, "Y1(-2k)": Ym2}
    return Amplitudes(Rr, Rl, Tr, Tl, Method.BORN2, aux)


@dataclass(frozen=True)
class PerturbativeInputs:
    """Dimensionless data for the resonance formulas: k = s K / 2, L = m 2 pi / K."""

    zhat: float
    ghat: float
    k: float
    K: float
    L: float
    m: int
    s: int
    coefficients: Mapping[int, complex]

    @classmethod
    def from_specs(cls, pot: PotentialSpec, nl: NonlinearitySpec, k: float) -> "PerturbativeInputs":
        if not pot.is_fourier:
            raise PreconditionError("resonance formulas need a Fourier-form potential")
        s, m = resonance_index(pot, k)
        return cls(pot.strength / k**2, nl.gamma / k**2, k, pot.K, pot.L, m, s, dict(pot.coefficients))

    def c(self, n: int) -> complex:
        return self.coefficients.get(n, 0j)

    def sum_indices(self) -> list[int]:
        """Every n != 0, +-s at which some summand can be nonzero."""
        s = self.s
        cand = set()
        for p in self.coefficients:
            cand.update((p, -p, p - s, p + s, -p - s, -p + s))
        return sorted(n for n in cand if n not in (0, s, -s))


@dataclass(frozen=True)
class ResonanceCoefficients:
    Rr_z: complex
    Rl_z: complex
    Tr_z: complex
    Tl_z: complex
    Tr_g: complex
    Tl_g: complex
    Rr_gz: complex
    Rl_gz: complex
    Rr_zz: complex
    Rl_zz: complex
    Tr_gz: complex
    Tl_gz: complex
    T_zz: complex


def resonance_coefficients(
    inp: PerturbativeInputs, Nm2: float, Np2: float, uncorrected: bool = False
) -> ResonanceCoefficients:
    """Expansion coefficients of R, T in zhat, ghat at a resonance.

    ``Nm2``, ``Np2`` are |N-|^2, |N+|^2. The gamma^2 terms are not part of
    this expansion. Three terms are easy to get wrong and were each checked
    against the numerical second-order expansion and the direct solver:

    * the c_{-s} c_s term of the right z^2 reflection coefficient is -4 (not +4);
    * the second-order transmission coefficients carry -i pi m s / 16 (not +);
    * the left gamma z transmission coefficient has 2 c_s^* (not 2 c_s).

    ``uncorrected=True`` switches all three to the wrong variants, for comparison.
    """
    s, c = inp.s, inp.c
    P = np.pi * inp.m * s
    iP = 1j * P
    cs, cms, c0 = c(s), c(-s), c(0)
    conj = np.conj
    ns = inp.sum_indices()

    sum_r = sum(3 * c(n) / (n - s) for n in ns)
    sum_l = sum(3 * c(n) / (n + s) for n in ns)
    sum_re = sum((c(n) + conj(c(n))) / n for n in ns)

    Rr_gz = iP * Nm2 / 16 * (
        3 * cms + conj(cms) + 2 * (6 * c0 - conj(c0)) + 6 * (-1 + iP) * cs + conj(cs) - 2 * s * sum_r
    )
    Rl_gz = iP * Np2 / 16 * (
        6 * (-1 + iP) * cms + conj(cms) + 2 * (6 * c0 - conj(c0)) + 3 * cs + conj(cs) + 2 * s * sum_l
    )
    cross = 4 if uncorrected else -4
    Rr_zz = iP / 16 * (
        2 * cms * c0 + cross * cms * cs + cms * c(2 * s) + 4 * c0**2 + 4 * (-1 + iP) * c0 * cs
        + 4 * cs**2
        + 2 * s * sum(
            -2 * c0 * c(n) / (n - s) + 2 * cs * c(n) / n + s * c(-n) * c(n + s) / (n * (n + s))
            for n in ns
        )
    )
    Rl_zz = iP / 16 * (
        c(-2 * s) * cs + 4 * cms**2 + 4 * (-1 + iP) * cms * c0 - 4 * cms * cs + 4 * c0**2 + 2 * c0 * cs
        + 2 * s * sum(
            -2 * cms * c(n) / n + 2 * c0 * c(n) / (n + s) + s * c(-n) * c(n - s) / (n * (n - s))
            for n in ns
        )
    )
    t_pre = iP / 16 if uncorrected else -iP / 16
    cs_l = cs if uncorrected else conj(cs)
    t_common = 2 * ((3 - iP) * c0 + (1 - iP) * conj(c0))
    Tr_gz = t_pre * Nm2 * (2 * conj(cms) + t_common - 2 * (3 * cs + 2 * conj(cs)) - 2 * s * sum_re)
    Tl_gz = t_pre * Np2 * (-2 * (3 * cms + 2 * conj(cms)) + t_common + 2 * cs_l + 2 * s * sum_re)
    T_zz = t_pre * (
        -2 * cms * c0 + (1 - 2 * iP) * cms * cs + 2 * cms * c(2 * s) + 2 * (1 - iP) * c0**2
        - 2 * c0 * cs - cs**2
        + 2 * s * sum(
            cms * c(n + s) / n - cs * c(n) / (n + s) - s * c(n) * c(-n) / (n * (n - s))
            for n in ns
        )
    )
    return ResonanceCoefficients(
        Rr_z=-iP * cs / 2,
        Rl_z=-iP * cms / 2,
        Tr_z=-iP * c0 / 2,
        Tl_z=-iP * c0 / 2,
        Tr_g=-iP * Nm2 / 2,
        Tl_g=-iP * Np2 / 2,
        Rr_gz=complex(Rr_gz),
        Rl_gz=complex(Rl_gz),
        Rr_zz=complex(Rr_zz),
        Rl_zz=complex(Rl_zz),
        Tr_gz=complex(Tr_gz),
        Tl_gz=complex(Tl_gz),
        T_zz=complex(T_zz),
    )


def born2_resonance(
    pot: PotentialSpec,
    nl: NonlinearitySpec,
    k: float,
    N_minus=1.0,
    N_plus=1.0,
    uncorrected: bool = False,
) -> Amplitudes:
    """Closed-form second-order amplitudes at a resonant wavenumber (Kerr only).

    Keeps the orders zhat, ghat, ghat*zhat and zhat^2; see
    ``resonance_coefficients`` for ``uncorrected``.
    """
    _needs_kerr(nl, "born2_resonance")
    inp = PerturbativeInputs.from_specs(pot, nl, k)
    co = resonance_coefficients(
        inp, abs(complex(N_minus)) ** 2, abs(complex(N_plus)) ** 2, uncorrected=uncorrected
    )
    z, g = inp.zhat, inp.ghat
    return Amplitudes(
        Rr=z * co.Rr_z + g * z * co.Rr_gz + z * z * co.Rr_zz,
        Rl=z * co.Rl_z + g * z * co.Rl_gz + z * z * co.Rl_zz,
        Tr=1 + z * co.Tr_z + g * co.Tr_g + z * g * co.Tr_gz + z * z * co.T_zz,
        Tl=1 + z * co.Tl_z + g * co.Tl_g + z * g * co.Tl_gz + z * z * co.T_zz,
        method=Method.RESONANCE,
    )
