"""Two-beam winding experiment and the phase states it can realize.

One beam is carried ``n`` times around a point flux of strength
``alpha``, the other stays put; both then meet on a screen. The relative
phase is ``2 pi n alpha`` (mod 2 pi). For ``alpha = p/q`` only ``q``
distinct phases are reachable.

Beam model: equal unit-amplitude plane waves. The two sources sit
``beam_separation`` apart at distance ``screen_distance`` from the
screen and aim at its center, so the transverse wave-vector difference is
``2 k sin(beta)`` with ``tan(beta) = beam_separation / (2 screen_distance)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import numpy as np

from .errors import InvalidGeometry, NotCoprime
from .flux_geometry import TWO_PI
from .io import csv_text

PHASE_CLASS_TOL = 1e-9


class ContrastClass(str, enum.Enum):
    IN_PHASE = "IN_PHASE"
    ANTI_PHASE = "ANTI_PHASE"
    INTERMEDIATE = "INTERMEDIATE"


@dataclass(frozen=True)
class ExperimentSpec:
    alpha: Real
    winding: int
    k: float
    beam_separation: float
    screen_points: int
    screen_width: float
    screen_distance: float = 1.0

    def __post_init__(self):
        if int(self.winding) != self.winding:
            raise InvalidGeometry("winding must be an integer")
        if self.screen_points < 2:
            raise InvalidGeometry("need at least two screen points")
        for name in ("k", "beam_separation", "screen_width", "screen_distance"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise InvalidGeometry(f"{name} must be positive, got {value}")

    @property
    def delta_k(self) -> float:
        beta = math.atan2(0.5 * self.beam_separation, self.screen_distance)
        return 2.0 * self.k * math.sin(beta)


@dataclass(frozen=True)
class InterferenceResult:
    phase_difference: float
    contrast_class: ContrastClass
    positions: np.ndarray = field(repr=False)
    intensity_profile: np.ndarray = field(repr=False)
    central_intensity: float
    modal_state: int | None = None

    def to_csv(self) -> str:
        return csv_text(("x", "intensity"), zip(self.positions, self.intensity_profile))

    def metadata(self) -> dict:
        return {
            "phase_difference": self.phase_difference,
            "contrast_class": self.contrast_class.value,
            "central_intensity": self.central_intensity,
            "modal_state": self.modal_state,
        }


def _turns(alpha, n: int):
    """Fractional part of ``n * alpha``, exact for Fraction input."""
    if isinstance(alpha, Fraction):
        return (n * alpha) % 1
    return math.fmod(n * float(alpha), 1.0) % 1.0


def winding_phase(alpha, n: int) -> float:
    """Relative phase ``(2 pi n alpha) mod 2 pi`` in [0, 2 pi)."""
    phase = TWO_PI * float(_turns(alpha, int(n)))
    return 0.0 if phase >= TWO_PI else phase


def logic_states(p: int, q: int) -> list[float]:
    """All phases ``(2 pi n p / q) mod 2 pi``, ascending; exactly ``q`` values."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {math.gcd(p, q)}")
    residues = sorted({(n * p) % q for n in range(q)})
    return [TWO_PI * j / q for j in residues]


def classify_phase(phase: float) -> ContrastClass:
    # circular distance, so 2pi - 1e-15 still counts as in phase
    if min(phase, TWO_PI - phase) < PHASE_CLASS_TOL:
        return ContrastClass.IN_PHASE
    if abs(phase - math.pi) < PHASE_CLASS_TOL:
        return ContrastClass.ANTI_PHASE
    return ContrastClass.INTERMEDIATE


def screen_positions(spec: ExperimentSpec) -> np.ndarray:
    """Cell-centred sample positions across the screen."""
    j = np.arange(spec.screen_points)
    return -0.5 * spec.screen_width + (j + 0.5) * spec.screen_width / spec.screen_points


def intensity(x, delta_k: float, delta_phi: float) -> np.ndarray:
    """``|1 + exp(i (delta_k x + delta_phi))|^2`` for unit-amplitude beams."""
    return np.abs(1.0 + np.exp(1j * (delta_k * np.asarray(x) + delta_phi))) ** 2


def interference_pattern(spec: ExperimentSpec) -> InterferenceResult:
    delta_phi = winding_phase(spec.alpha, spec.winding)
    x = screen_positions(spec)
    profile = intensity(x, spec.delta_k, delta_phi)
    modal = None
    if isinstance(spec.alpha, Fraction):
        q = spec.alpha.denominator
        modal = int(round(delta_phi * q / TWO_PI)) % q
    return InterferenceResult(
        phase_difference=delta_phi,
        contrast_class=classify_phase(delta_phi),
        positions=x,
        intensity_profile=profile,
        central_intensity=float(intensity(0.0, spec.delta_k, delta_phi)),
        modal_state=modal,
    )
