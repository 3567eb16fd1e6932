import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kerrscatter import Amplitudes, Incidence, Method, NonlinearitySpec, PotentialSpec, potential_from_permittivity
from kerrscatter.errors import DomainError, PreconditionError
from kerrscatter.model import eval_f, eval_v, period_count, resonance_index, resonant_wavenumbers

coeff_maps = st.dictionaries(
    st.integers(-8, 8),
    st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=4,
)


def test_exactly_one_representation():
    with pytest.raises(DomainError):
        PotentialSpec(1.0, 1.0)
    with pytest.raises(DomainError):
        PotentialSpec(1.0, 1.0, coefficients={0: 1}, sampled_profile=[1, 1])


@pytest.mark.parametrize("L,K", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (math.inf, 1.0)])
def test_bad_geometry(L, K):
    with pytest.raises(DomainError):
        PotentialSpec(L, K, coefficients={0: 1})


def test_large_profile_warns():
    with pytest.warns(UserWarning):
        PotentialSpec(1.0, 1.0, coefficients={1: 8, 2: 8})
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        PotentialSpec(1.0, 1.0, coefficients={1: 0.5})


def test_profile_is_read_only():
    pot = PotentialSpec(1.0, 1.0, sampled_profile=np.ones(5))
    with pytest.raises(ValueError):
        pot.sampled_profile[0] = 2


def test_zero_outside_slab():
    pot = PotentialSpec(2.0, 1.0, coefficients={0: 1.0, 1: 0.5j})
    assert eval_f(pot, -1e-9) == 0
    assert eval_f(pot, 2.0 + 1e-9) == 0
    assert eval_f(pot, 0.0) == 1 + 0.5j
    np.testing.assert_array_equal(eval_f(pot, [-1.0, 3.0]), [0, 0])


def test_eval_rejects_nan():
    pot = PotentialSpec(1.0, 1.0, coefficients={0: 1.0})
    with pytest.raises(DomainError):
        eval_f(pot, math.nan)


@given(coeff_maps, st.floats(0, 6.2), st.integers(1, 3))
def test_fourier_profile_is_periodic_inside(coeffs, x, m):
    pot = PotentialSpec(2 * math.pi * 4, 1.0, coefficients=coeffs)
    a, b = eval_f(pot, x), eval_f(pot, x + 2 * math.pi * m)
    assert abs(a - b) <= 1e-9 * (1 + abs(a))


@given(st.floats(0.1, 10), st.floats(-3, 3), st.floats(-3, 3))
def test_eval_v_scales_with_strength(z, x, c):
    pot = PotentialSpec(5.0, 1.0, z, {0: complex(c, 1)})
    assert eval_v(pot, 1.0) == pytest.approx(z * eval_f(pot, 1.0))


@given(
    st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=2, max_size=20),
    st.floats(0.1, 5),
)
def test_permittivity_roundtrip(eps, k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pot = potential_from_permittivity(eps, k, 2.0)
    nodes = np.linspace(0, 2.0, len(eps))
    back = 1 - eval_f(pot, nodes) / k**2
    np.testing.assert_allclose(back, eps, atol=1e-12 * max(1, k**2) * 10)


def test_permittivity_vacuum_is_zero_potential():
    pot = potential_from_permittivity([1.0], 2.0, 3.0)
    assert np.all(eval_v(pot, np.linspace(0, 3, 7)) == 0)
    with pytest.raises(DomainError):
        potential_from_permittivity([], 1.0, 1.0)


def test_period_count_and_resonances():
    pot = PotentialSpec(2 * math.pi * 3, 1.0, coefficients={1: 1})
    assert period_count(pot) == 3
    res = resonant_wavenumbers(pot, 4)
    assert [r.k for r in res] == [0.5, 1.0, 1.5, 2.0]
    assert all(r.m == 3 for r in res)
    assert resonance_index(pot, 1.5) == (3, 3)
    with pytest.raises(PreconditionError):
        resonance_index(pot, 1.3)
    with pytest.raises(PreconditionError):
        period_count(PotentialSpec(7.0, 1.0, coefficients={1: 1}))


def test_nonlinearity_kinds():
    assert NonlinearitySpec(2.0).F(3.0) == 9.0
    sat = NonlinearitySpec(1.0, "custom", lambda r: r / (1 + r))
    assert sat.F(1.0) == 0.5
    with pytest.raises(DomainError):
        NonlinearitySpec(1.0, "custom")
    with pytest.raises(DomainError):
        NonlinearitySpec(math.nan)


def test_incidence_validation():
    assert Incidence(1.0, "left", 2).amplitude == 2 + 0j
    for bad in (dict(k=0.0, direction="left"), dict(k=1.0, direction="right", amplitude=0)):
        with pytest.raises(DomainError):
            Incidence(**bad)


def test_amplitudes_invariants():
    with pytest.raises(ArithmeticError):
        Amplitudes(math.nan, 0, 1, 1, Method.BORN1)
    with pytest.raises(ValueError):
        Amplitudes(0, 0, 1, 1, Method.DIRECT)
    a = Amplitudes(0, 0, 1, 1, "born1")
    b = Amplitudes(1e-3, 0, 1, 1, Method.BORN2)
    assert a.method is Method.BORN1
    assert a.max_abs_diff(b) == pytest.approx(1e-3)
