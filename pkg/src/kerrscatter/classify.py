"""Reflectionlessness / transparency / invisibility as thresholded predicates."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

from .errors import DomainError
from .model import Amplitudes

DEFAULT_TOL = 1e-6


class Unidirectional(str, Enum):
    NONE = "none"
    LEFT = "left-invisible"
    RIGHT = "right-invisible"


@dataclass(frozen=True)
class Classification:
    reflectionless_right: bool
    reflectionless_left: bool
    transparent_right: bool
    transparent_left: bool
    invisible_right: bool
    invisible_left: bool
    unidirectional: Unidirectional
    residuals: dict
    tol: float

    def to_record(self) -> dict:
        """Flat JSON-ready record: flags, residuals, tol."""
        rec = asdict(self)
        rec["unidirectional"] = self.unidirectional.value
        residuals = rec.pop("residuals")
        rec.update({f"residual_{key}": float(val) for key, val in residuals.items()})
        return rec


def _classify(refl_r, refl_l, trans_r, trans_l, tol) -> Classification:
    if not tol > 0:
        raise DomainError("tol must be positive")
    rr, rl = refl_r < tol, refl_l < tol
    tr, tl = trans_r < tol, trans_l < tol
    inv_r, inv_l = rr and tr, rl and tl
    if inv_l and not inv_r:
        uni = Unidirectional.LEFT
    elif inv_r and not inv_l:
        uni = Unidirectional.RIGHT
    else:
        uni = Unidirectional.NONE
    residuals = {
        "reflection_right": refl_r,
        "reflection_left": refl_l,
        "transmission_right": trans_r,
        "transmission_left": trans_l,
    }
    return Classification(rr, rl, tr, tl, inv_r, inv_l, uni, residuals, tol)


def classify_transforms(
    tX0: complex, tX2k: complex, tYm2k: complex, tY0: complex, k: float, tol: float = DEFAULT_TOL
) -> Classification:
    """Classify from the source transforms; residuals are |transform| / (2k).

    Right: X(2k) = 0 reflectionless, X(0) = 0 transparent.
    Left:  Y(-2k) = 0 reflectionless, Y(0) = 0 transparent.
    """
    if not k > 0:
        raise DomainError("k must be positive")
    s = 2 * k
    return _classify(abs(tX2k) / s, abs(tYm2k) / s, abs(tX0) / s, abs(tY0) / s, tol)


def classify_amplitudes(amps: Amplitudes, tol: float = DEFAULT_TOL) -> Classification:
    """Classify from amplitudes: reflectionless iff |R| < tol, transparent iff |T - 1| < tol."""
    return _classify(abs(amps.Rr), abs(amps.Rl), abs(amps.Tr - 1), abs(amps.Tl - 1), tol)


def classify_direct(amps: Amplitudes, k: float, tol: float = DEFAULT_TOL) -> Optional[Classification]:
    """Transform-based classification of amplitudes that carry X/Y transforms."""
    aux = amps.aux or {}
    try:
        return classify_transforms(aux["X(0)"], aux["X(2k)"], aux["Y(-2k)"], aux["Y(0)"], k, tol)
    except KeyError:
        return None
