import math

import pytest
from hypothesis import settings

from kerrscatter import NonlinearitySpec, PotentialSpec

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

THREE_HARMONIC = {-2: 0.50, 4: 0.35, -6: -0.15}


@pytest.fixture
def three_harmonic():
    """k -> (potential, nonlinearity) of the three-harmonic slab with k^2-scaled couplings."""

    def make(k, zhat=1e-2, ghat=1e-3, m=1):
        return PotentialSpec(2 * math.pi * m, 1.0, zhat * k * k, THREE_HARMONIC), NonlinearitySpec(ghat * k * k)

    return make
