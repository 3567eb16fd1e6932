"""
Nonperturbative scattering amplitudes from the field equation.

For a given k the two scattering solutions are obtained by integrating the
nonlinear equation across the slab as an initial-value problem:

* ``xi``   (right incidence): xi(0) = N-, xi'(0) = -i k N-, integrated 0 -> L;
* ``zeta`` (left incidence):  zeta(L) = N+, zeta'(L) = i k N+, integrated L -> 0.

Because the nonlinearity only depends on |psi| the IVP needs no
self-consistency loop. The amplitudes are then extracted twice, once from
the Jost functions at the slab faces and once from the Fourier transforms
of the source terms X, Y; the two routes are algebraically equivalent and
their difference measures the combined solver and quadrature error.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, IntegrationError, SpectralSingularityError
from .model import (
    Amplitudes,
    Direction,
    Incidence,
    Method,
    NonlinearitySpec,
    PotentialSpec,
    eval_f,
)
from .quadrature import cumulative, fourier_transform, uniform_grid

DEFAULT_GRID = 4096
DEFAULT_TOL = 1e-10
SINGULARITY_RTOL = 1e-12


@dataclass(frozen=True)
class FieldSolution:
    grid: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray
    which: str  # "xi" or "zeta"
    incidence: Incidence
    hat: bool = False  # psi already holds the normalized field

    @property
    def k(self) -> float:
        return self.incidence.k

    @property
    def L(self) -> float:
        return float(self.grid[-1])

    def normalized(self) -> np.ndarray:
        """xi_hat = e^{ikx} xi / N-  or  zeta_hat = e^{ik(L-x)} zeta / N+."""
        k, N = self.k, self.incidence.amplitude
        if self.hat:
            return self.psi
        if self.which == "xi":
            return np.exp(1j * k * self.grid) * self.psi / N
        return np.exp(1j * k * (self.L - self.grid)) * self.psi / N


@dataclass(frozen=True)
class SourceTerm:
    grid: np.ndarray
    values: np.ndarray
    transform_at: dict = field(default_factory=dict)

    def transform(self, q: float) -> complex:
        if q in self.transform_at:
            return self.transform_at[q]
        return complex(fourier_transform(self.values, self.grid, q))


def _potential_fn(pot: PotentialSpec):
    """Scalar x -> z f(x) for the integrator (x is always inside the slab)."""
    z = pot.strength
    if pot.is_fourier:
        terms = [(z * c, n * pot.K) for n, c in pot.coefficients.items() if c != 0]

        def zf(x):
            s = 0j
            for c, w in terms:
                s += c * cmath.exp(1j * w * x)
            return s

        return zf
    return lambda x: z * eval_f(pot, x)


def _make_rhs(pot: PotentialSpec, nl: NonlinearitySpec, k: float):
    """Right-hand side in travelling-wave amplitudes.

    psi = a e^{ikx} + b e^{-ikx}, psi' = ik (a e^{ikx} - b e^{-ikx}), so
    a' = V psi e^{-ikx} / 2ik and b' = -V psi e^{ikx} / 2ik with
    V = z f + g F(|psi|). The state only moves where V is nonzero, so a free
    field is reproduced exactly and the step size follows the coupling.
    """
    g = nl.gamma
    zf = _potential_fn(pot)
    kerr = nl.is_kerr
    inv = 1 / (2j * k)

    # state (Re a, Im a, Re b, Im b)
    def rhs(x, y):
        e = cmath.exp(1j * k * x)
        a = complex(y[0], y[1])
        b = complex(y[2], y[3])
        ae, be = a * e, b / e
        psi = ae + be
        if kerr:
            v = zf(x) + g * (psi.real * psi.real + psi.imag * psi.imag)
        else:
            v = zf(x) + g * complex(nl.F(abs(psi)))
        w = v * psi * inv
        da, db = w / e, -w * e
        return np.array([da.real, da.imag, db.real, db.imag])

    return rhs


def solve_field(
    pot: PotentialSpec,
    nl: NonlinearitySpec,
    inc: Incidence,
    grid_size: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
    *,
    first_step: Optional[float] = None,
    max_step: float = np.inf,
) -> FieldSolution:
    """Integrate the slab field for one incidence with adaptive RK45.

    The integrated variables are the travelling-wave amplitudes (see
    ``_make_rhs``). ``tol`` bounds their local error per step (relative,
    with an absolute floor of tol*|N|). Values on the uniform report grid come from the
    method's 4th-order dense output. Passing ``first_step == max_step`` with
    a loose ``tol`` gives an effectively fixed-step run.
    """
    if grid_size < 64:
        raise DomainError("grid_size must be >= 64")
    if not tol > 0:
        raise DomainError("tol must be positive")
    k, N = inc.k, inc.amplitude
    grid = uniform_grid(pot.L, grid_size)
    if inc.direction is Direction.RIGHT:
        which, span, t_eval = "xi", (0.0, pot.L), grid
        a0, b0 = 0j, N
    else:
        which, span, t_eval = "zeta", (pot.L, 0.0), grid[::-1]
        a0, b0 = N * cmath.exp(-1j * k * pot.L), 0j
    y0 = [a0.real, a0.imag, b0.real, b0.imag]

    sol = solve_ivp(
        _make_rhs(pot, nl, k),
        span,
        y0,
        method="RK45",
        t_eval=t_eval,
        rtol=tol,
        atol=tol * abs(N),
        first_step=first_step,
        max_step=max_step,
    )
    if sol.status != 0 or sol.y.shape[1] != t_eval.size or not np.all(np.isfinite(sol.y)):
        reached = float(sol.t[-1]) if sol.t.size else span[0]
        raise IntegrationError(f"integration failed: {sol.message}", reached)

    y = sol.y if which == "xi" else sol.y[:, ::-1]
    ae = (y[0] + 1j * y[1]) * np.exp(1j * k * grid)
    be = (y[2] + 1j * y[3]) * np.exp(-1j * k * grid)
    psi = ae + be
    dpsi = 1j * k * (ae - be)
    # pin the initial data exactly (dense output reproduces it only to round-off)
    if which == "xi":
        psi[0], dpsi[0] = N, -1j * k * N
    else:
        psi[-1], dpsi[-1] = N, 1j * k * N
    return FieldSolution(grid, psi, dpsi, which, inc)


def jost_functions(sol: FieldSolution, k: Optional[float] = None) -> tuple[complex, complex]:
    """(F+, F-) for a xi solution, (G+, G-) for a zeta solution."""
    k = sol.k if k is None else k
    if sol.which == "xi":
        psi, dpsi = sol.psi[-1], sol.dpsi[-1]
    else:
        psi, dpsi = sol.psi[0], sol.dpsi[0]
    return complex(dpsi + 1j * k * psi), complex(dpsi - 1j * k * psi)


def _check_pair(sol_xi: FieldSolution, sol_zeta: FieldSolution):
    if sol_xi.which != "xi" or sol_zeta.which != "zeta":
        raise DomainError("expected a (xi, zeta) pair of solutions")
    if sol_xi.k != sol_zeta.k:
        raise DomainError("xi and zeta were solved at different k")


def amplitudes_jost(sol_xi: FieldSolution, sol_zeta: FieldSolution, aux=None) -> Amplitudes:
    _check_pair(sol_xi, sol_zeta)
    k, L = sol_xi.k, sol_xi.L
    Fp, Fm = jost_functions(sol_xi)
    Gp, Gm = jost_functions(sol_zeta)
    floor = SINGULARITY_RTOL * 2 * k
    if abs(Fm) < floor or abs(Gp) < floor:
        raise SpectralSingularityError(f"Jost function vanishes at k = {k}")
    phase = cmath.exp(-1j * k * L)
    Nm, Np = sol_xi.incidence.amplitude, sol_zeta.incidence.amplitude
    if aux is None:
        aux = {"F+": Fp, "F-": Fm, "G+": Gp, "G-": Gm}
    return Amplitudes(
        Rr=-phase * phase * Fp / Fm,
        Rl=-Gm / Gp,
        Tr=-2j * k * phase * Nm / Fm,
        Tl=2j * k * phase * Np / Gp,
        method=Method.DIRECT,
        aux=aux,
    )


def source_terms(
    sol_xi: FieldSolution,
    sol_zeta: FieldSolution,
    pot: PotentialSpec,
    nl: NonlinearitySpec,
) -> tuple[SourceTerm, SourceTerm]:
    """X(x) and Y(x) on the grid with their transforms at q = 0, 2k (X) and 0, -2k (Y)."""
    _check_pair(sol_xi, sol_zeta)
    k = sol_xi.k
    out = []
    for sol, qs in ((sol_xi, (0.0, 2 * k)), (sol_zeta, (0.0, -2 * k))):
        hat = sol.normalized()
        zf = pot.strength * eval_f(pot, sol.grid)
        # |N * hat| == |psi|
        values = (nl.gamma * nl.F(np.abs(sol.psi)) + zf) * hat
        tr = {q: complex(fourier_transform(values, sol.grid, q)) for q in qs}
        out.append(SourceTerm(sol.grid, values, tr))
    return out[0], out[1]


def amplitudes_fourier(src_x: SourceTerm, src_y: SourceTerm, k: float) -> Amplitudes:
    X0, X2 = src_x.transform(0.0), src_x.transform(2 * k)
    Y0, Ym2 = src_y.transform(0.0), src_y.transform(-2 * k)
    dx, dy = 2j * k - X0, 2j * k - Y0
    floor = SINGULARITY_RTOL * 2 * k
    if abs(dx) < floor or abs(dy) < floor:
        raise SpectralSingularityError(f"transmission denominator vanishes at k = {k}")
    return Amplitudes(
        Rr=X2 / dx,
        Rl=Ym2 / dy,
        Tr=2j * k / dx,
        Tl=2j * k / dy,
        method=Method.DIRECT,
        aux={"X(0)": X0, "X(2k)": X2, "Y(0)": Y0, "Y(-2k)": Ym2},
    )


@dataclass(frozen=True)
class DirectRun:
    """Both scattering solutions at one k and the amplitudes by both routes."""

    xi: FieldSolution
    zeta: FieldSolution
    src_x: SourceTerm
    src_y: SourceTerm
    jost: Amplitudes
    fourier: Amplitudes

    @property
    def route_gap(self) -> float:
        return self.jost.max_abs_diff(self.fourier)

    @property
    def amplitudes(self) -> Amplitudes:
        """Jost-route amplitudes carrying the source transforms as aux."""
        aux = dict(self.fourier.aux)
        aux.update(self.jost.aux)
        return Amplitudes(self.jost.Rr, self.jost.Rl, self.jost.Tr, self.jost.Tl, Method.DIRECT, aux)


def solve_direct(
    pot: PotentialSpec,
    nl: NonlinearitySpec,
    k: float,
    N_minus: complex = 1.0,
    N_plus: complex = 1.0,
    grid_size: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
) -> DirectRun:
    xi = solve_field(pot, nl, Incidence(k, Direction.RIGHT, N_minus), grid_size, tol)
    zeta = solve_field(pot, nl, Incidence(k, Direction.LEFT, N_plus), grid_size, tol)
    sx, sy = source_terms(xi, zeta, pot, nl)
    return DirectRun(xi, zeta, sx, sy, amplitudes_jost(xi, zeta), amplitudes_fourier(sx, sy, k))


def integral_equation_residual(sol: FieldSolution, pot: PotentialSpec, nl: NonlinearitySpec) -> float:
    """Max-norm residual of psi against its Volterra integral equation.

    psi(x) - psi_free(x) - int_{x0}^{x} sin(k(x - x'))/k S(x') psi(x') dx',
    with x0 = 0 for xi and x0 = L for zeta, S = gamma F(|psi|) + z f.
    """
    k, N, x = sol.k, sol.incidence.amplitude, sol.grid
    rho = (nl.gamma * nl.F(np.abs(sol.psi)) + pot.strength * eval_f(pot, x)) * sol.psi
    # sin(k(x - x')) = sin(kx) cos(kx') - cos(kx) sin(kx')
    Ic = cumulative(np.cos(k * x) * rho, x)
    Is = cumulative(np.sin(k * x) * rho, x)
    if sol.which == "xi":
        free = N * np.exp(-1j * k * x)
    else:
        free = N * np.exp(1j * k * (x - sol.L))
        Ic, Is = Ic - Ic[-1], Is - Is[-1]
    integral = (np.sin(k * x) * Ic - np.cos(k * x) * Is) / k
    return float(np.max(np.abs(sol.psi - free - integral)))


def write_field_csv(sol: FieldSolution, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "Re_psi", "Im_psi", "Re_dpsi", "Im_dpsi"])
        for x, p, d in zip(sol.grid, sol.psi, sol.dpsi):
            w.writerow([format(float(v), ".17g") for v in (x, p.real, p.imag, d.real, d.imag)])
