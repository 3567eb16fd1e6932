import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from kerrscatter import (
    LINEAR,
    Direction,
    Incidence,
    NonlinearitySpec,
    PotentialSpec,
    born1_fourier,
    born1_general,
    born2_general,
    born2_resonance,
    first_order_fields,
    solve_direct,
)
from kerrscatter.born import LIMIT_RTOL, PerturbativeInputs, exp_integral, resonance_coefficients
from kerrscatter.errors import DomainError, PreconditionError
from kerrscatter.model import eval_f

L = 2 * math.pi


# exp_integral


@given(st.floats(-50, 50), st.floats(0.1, 30))
def test_exp_integral_matches_quadrature(theta, length):
    re = quad(lambda x: math.cos(theta * x), 0, length, limit=400)[0]
    im = quad(lambda x: math.sin(theta * x), 0, length, limit=400)[0]
    assert abs(exp_integral(theta, length) - complex(re, im)) < 1e-8


@given(st.floats(1e-3, 10), st.floats(0.5, 1.5))
def test_exp_integral_continuous_across_limit_branch(length, frac):
    below = LIMIT_RTOL * frac * 0.999
    above = LIMIT_RTOL * frac * 1.001 + LIMIT_RTOL
    for t in (below, above, -below, -above):
        assert abs(exp_integral(t, length) - length) < 2 * abs(t) * length**2


def test_exp_integral_exact_limit():
    assert exp_integral(0.0, 3.0) == 3.0
    assert abs(exp_integral(1.0, L)) < 1e-15
    assert abs(exp_integral(4.0, L, scale=1.0)) < 1e-15


# first order


def test_born1_closed_form_matches_quadrature(three_harmonic):
    for k in (0.5, 1.3, 2.0, 3.77):
        pot, nl = three_harmonic(k)
        a = born1_fourier(pot, nl, k, 1.2, 0.7)
        b = born1_general(pot, nl, k, 1.2, 0.7, grid_size=4096)
        assert a.max_abs_diff(b) < 1e-12


def test_born1_on_sampled_profile(three_harmonic):
    pot, nl = three_harmonic(1.7)
    x = np.linspace(0, L, 4097)
    sampled = PotentialSpec(L, 1.0, pot.strength, sampled_profile=eval_f(pot, x))
    a = born1_fourier(pot, nl, 1.7)
    b = born1_general(sampled, nl, 1.7)
    assert a.max_abs_diff(b) < 1e-6
    with pytest.raises(DomainError):
        born1_fourier(sampled, nl, 1.7)


def test_born1_accepts_custom_nonlinearity():
    pot = PotentialSpec(L, 1.0, 0.0, {0: 0})
    sat = NonlinearitySpec(0.1, "custom", lambda r: r / (1 + r))
    a = born1_general(pot, sat, 1.0, N_minus=1.0)
    assert a.Tr == pytest.approx(1 + 0.1 * 0.5 * L / 2j)


def test_born1_error_is_second_order(three_harmonic):
    errs = []
    for eps in (1e-3, 5e-4):
        pot, nl = three_harmonic(1.3, zhat=eps, ghat=eps)
        errs.append(born1_fourier(pot, nl, 1.3).max_abs_diff(solve_direct(pot, nl, 1.3).amplitudes))
    assert 3.5 < errs[0] / errs[1] < 4.5


def test_gamma_only_first_order_field_closed_form():
    g, k = 0.3, 1.1
    pot = PotentialSpec(L, 1.0, 0.0, {0: 0})
    sol = first_order_fields(pot, NonlinearitySpec(g), Incidence(k, Direction.RIGHT), grid_size=2048)
    x = sol.grid
    expected = 1 + g * ((np.exp(2j * k * x) - 1) / (2j * k) - x) / (2j * k)
    np.testing.assert_allclose(sol.psi, expected, atol=1e-10)
    np.testing.assert_allclose(sol.dpsi, g * (np.exp(2j * k * x) - 1) / (2j * k), atol=1e-10)


@pytest.mark.parametrize("direction", [Direction.RIGHT, Direction.LEFT])
def test_first_order_field_against_brute_force(direction, three_harmonic):
    k = 1.7
    pot, nl = three_harmonic(k, zhat=0.1, ghat=0.05)
    sol = first_order_fields(pot, nl, Incidence(k, direction, 1.4), grid_size=1024)
    g = nl.gamma * 1.4**2
    sign = 1 if direction is Direction.RIGHT else -1
    x0 = 0.0 if direction is Direction.RIGHT else L

    def kernel(xp, x, part):
        v = math.sin(k * (x - xp)) * np.exp(sign * 1j * k * (x - xp)) * (g + pot.strength * eval_f(pot, xp)) / k
        return v.real if part == 0 else v.imag

    for i in (100, 517, 1000):
        x = sol.grid[i]
        re = quad(kernel, x0, x, args=(x, 0), limit=200)[0]
        im = quad(kernel, x0, x, args=(x, 1), limit=200)[0]
        assert abs(sol.psi[i] - (1 + complex(re, im))) < 1e-9


def test_first_order_field_tracks_direct_field(three_harmonic):
    k = 2.2
    pot, nl = three_harmonic(k, zhat=1e-3, ghat=1e-3)
    direct = solve_direct(pot, nl, k).xi.normalized()
    born = first_order_fields(pot, nl, Incidence(k, Direction.RIGHT)).psi
    assert np.max(np.abs(direct - born)) < 1e-4
    assert np.max(np.abs(direct - 1)) > 1e-3


# second order


def test_born2_modes_differ_at_expected_order(three_harmonic):
    k = 1.9
    diffs = []
    for eps in (1e-2, 5e-3):
        pot, nl = three_harmonic(k, zhat=eps, ghat=eps)
        second = born2_general(pot, nl, k)
        closed = born2_general(pot, nl, k, truncate="closed-form")
        full = born2_general(pot, nl, k, truncate="none")
        diffs.append((second.max_abs_diff(closed), second.max_abs_diff(full)))
    assert 3.5 < diffs[0][0] / diffs[1][0] < 4.5  # gamma^2 terms
    assert diffs[0][1] / diffs[1][1] > 7  # third order and up
    with pytest.raises(DomainError):
        born2_general(pot, nl, k, truncate="bogus")


def test_born2_linear_is_reciprocal():
    pot = PotentialSpec(L, 1.0, 0.05, {1: 0.4 + 0.2j, -3: 0.3, 2: -0.1j})
    for k in (0.7, 1.5, 3.1):
        a = born2_general(pot, LINEAR, k)
        assert abs(a.Tr - a.Tl) < 1e-13


def test_born2_nonreciprocal_with_unequal_amplitudes(three_harmonic):
    pot, nl = three_harmonic(1.5)
    a = born2_general(pot, nl, 1.5, N_minus=1.0, N_plus=2.0)
    assert abs(a.Tr - a.Tl) > 1e-4


def test_born2_rejects_custom_nonlinearity(three_harmonic):
    pot, _ = three_harmonic(1.0)
    with pytest.raises(DomainError):
        born2_general(pot, NonlinearitySpec(0.1, "custom", np.square), 1.0)


# resonance closed form

complex_coeff = st.complex_numbers(max_magnitude=0.6, allow_nan=False, allow_infinity=False)


@given(
    st.dictionaries(st.integers(-7, 7), complex_coeff, min_size=1, max_size=4),
    st.integers(1, 8),
    st.integers(1, 3),
    st.floats(0.2, 2.0),
    st.floats(0.2, 2.0),
)
def test_resonance_closed_form_matches_quadrature(coeffs, s, m, Nm, Np):
    k = s / 2
    pot = PotentialSpec(L * m, 1.0, 1e-2 * k * k, coeffs)
    nl = NonlinearitySpec(1e-3 * k * k)
    closed = born2_resonance(pot, nl, k, Nm, Np)
    numeric = born2_general(pot, nl, k, Nm, Np, grid_size=1024 * m, truncate="closed-form")
    assert closed.max_abs_diff(numeric) < 1e-9


def test_uncorrected_variants_differ():
    # c_{-s} c_s != 0 so every corrected term is exercised (s = 2)
    pot = PotentialSpec(L, 1.0, 1e-2, {-2: 0.5, 2: 0.3 + 0.2j, 4: 0.35})
    inp = PerturbativeInputs.from_specs(pot, NonlinearitySpec(1e-3), 1.0)
    fixed = resonance_coefficients(inp, 1.0, 1.0)
    wrong = resonance_coefficients(inp, 1.0, 1.0, uncorrected=True)
    assert fixed.Rr_zz != wrong.Rr_zz
    assert fixed.T_zz == pytest.approx(-wrong.T_zz)
    assert fixed.Tr_gz == pytest.approx(-wrong.Tr_gz)
    assert fixed.Tl_gz != pytest.approx(-wrong.Tl_gz)
    for name in ("Rr_z", "Rl_z", "Tr_z", "Tl_z", "Tr_g", "Tl_g", "Rr_gz", "Rl_gz", "Rl_zz"):
        assert getattr(fixed, name) == getattr(wrong, name)


def test_resonance_needs_resonant_k_and_whole_periods(three_harmonic):
    pot, nl = three_harmonic(1.3)
    with pytest.raises(PreconditionError):
        born2_resonance(pot, nl, 1.3)
    with pytest.raises(PreconditionError):
        born2_resonance(pot.with_length(7.0), nl, 1.5)


def test_reflection_ratio_at_four(three_harmonic):
    a = born2_resonance(*three_harmonic(4.0), 4.0)
    assert abs(a.Rl / a.Rr) == pytest.approx(4.79, abs=0.01)
    assert a.Rr.real == 0 and a.Rl.real == 0
