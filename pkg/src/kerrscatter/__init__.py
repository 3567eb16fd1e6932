"""Scattering amplitudes of a finite complex potential slab with a confined Kerr nonlinearity."""

from .born import born1_fourier, born1_general, born2_general, born2_resonance, first_order_fields
from .classify import Classification, Unidirectional, classify_amplitudes, classify_direct, classify_transforms
from .config import ConfigError, ScatteringConfig, load_config, parse_config
from .direct import amplitudes_fourier, amplitudes_jost, solve_direct, solve_field
from .errors import DomainError, IntegrationError, PreconditionError, SpectralSingularityError
from .model import (
    LINEAR,
    Amplitudes,
    Direction,
    Incidence,
    Method,
    NonlinearitySpec,
    PotentialSpec,
    potential_from_permittivity,
    resonant_wavenumbers,
)

__all__ = [
    "Amplitudes", "Classification", "ConfigError", "Direction", "DomainError", "Incidence",
    "IntegrationError", "LINEAR", "Method", "NonlinearitySpec", "PotentialSpec",
    "PreconditionError", "ScatteringConfig", "SpectralSingularityError", "Unidirectional",
    "amplitudes_fourier", "amplitudes_jost", "born1_fourier", "born1_general", "born2_general",
    "born2_resonance", "classify_amplitudes", "classify_direct", "classify_transforms",
    "first_order_fields", "load_config", "parse_config", "potential_from_permittivity",
    "resonant_wavenumbers", "solve_direct", "solve_field",
]  # fmt: skip
