"""Aharonov-Bohm partial-wave wavefunction for a single flux at the origin.

Each angular mode carries a radial Bessel factor of order ``|m + alpha|``:

    psi(r, phi) = exp(i alpha phi0) * sum_m (-i)^|m+alpha| J_|m+alpha|(k r) exp(i m (phi - theta0))

with ``(-i)^x = exp(-i pi x / 2)``. At ``alpha = 0`` this is the plane wave
``exp(-i k r cos(phi - theta0))``: ``theta0`` is the direction the beam
arrives *from*, so the incident wave vector points along ``theta0 + pi``
(the original Aharonov-Bohm convention).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bessel
from .bessel import bessel_j
from .errors import (
    ForwardRegion,
    RadiusTooSmall,
    TooCloseToFlux,
    TruncationInsufficient,
)
from .flux_geometry import EXCLUSION_RADIUS, wrap_angle
from .io import csv_text

__all__ = [
    "PartialWaveSpec",
    "Grid",
    "ComplexField",
    "bessel_j",
    "ab_mode",
    "ab_wavefunction",
    "truncation_order",
    "scattering_amplitude",
    "incident_wave",
]

TAIL_BOUND = 1e-12
MIN_TRUNCATION_MARGIN = 15
MAX_TRUNCATION_MARGIN = 60
FORWARD_HALF_ANGLE = 0.5
MIN_EXTRACTION_KR = 50.0


@dataclass(frozen=True)
class PartialWaveSpec:
    """Parameters of the single-flux wavefunction.

    ``m_max=None`` picks the truncation automatically from the grid.
    """

    alpha: float
    k: float
    m_max: int | None = None
    incidence_angle: float = 0.0
    ideal_angle: float = 0.0

    def __post_init__(self):
        if not self.k > 0.0:
            raise ValueError("k must be positive")
        if self.m_max is not None and self.m_max < 1:
            raise ValueError("m_max must be a positive integer")


@dataclass(frozen=True)
class Grid:
    """Flat list of sample points, either Cartesian ``(x, y)`` or polar ``(r, phi)``."""

    a: np.ndarray
    b: np.ndarray
    polar: bool = False

    @classmethod
    def rectangular(cls, xmin, xmax, ymin, ymax, nx, ny) -> "Grid":
        x = np.linspace(xmin, xmax, int(nx))
        y = np.linspace(ymin, ymax, int(ny))
        xx, yy = np.meshgrid(x, y, indexing="xy")
        return cls(xx.ravel(), yy.ravel(), polar=False)

    @classmethod
    def from_polar(cls, r, phi) -> "Grid":
        r, phi = np.broadcast_arrays(np.asarray(r, float), np.asarray(phi, float))
        return cls(r.ravel().copy(), phi.ravel().copy(), polar=True)

    def polar_coords(self) -> tuple[np.ndarray, np.ndarray]:
        if self.polar:
            return self.a, self.b
        return np.hypot(self.a, self.b), np.arctan2(self.b, self.a)

    def cartesian_coords(self) -> tuple[np.ndarray, np.ndarray]:
        if self.polar:
            return self.a * np.cos(self.b), self.a * np.sin(self.b)
        return self.a, self.b

    def shifted(self, dx: float, dy: float) -> "Grid":
        """Cartesian grid translated by ``(dx, dy)``."""
        x, y = self.cartesian_coords()
        return Grid(x + dx, y + dy, polar=False)


@dataclass(frozen=True)
class ComplexField:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != len(self.grid.a):
            raise ValueError("coordinates and values differ in length")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")

    def to_csv(self) -> str:
        if self.grid.polar:
            header, comment = ("r", "phi", "re", "im"), "coords=polar"
        else:
            header, comment = ("x", "y", "re", "im"), None
        rows = zip(self.grid.a, self.grid.b, self.values.real, self.values.imag)
        return csv_text(header, rows, comment=comment)


def _phase_power(order) -> np.ndarray:
    """Principal value ``(-i)^order = exp(-i pi order / 2)``."""
    return np.exp(-0.5j * np.pi * np.asarray(order, dtype=float))


def mode_order(m: int, alpha: float) -> float:
    return abs(m + alpha)


def ab_mode(m: int, spec: PartialWaveSpec, r, phi):
    """Single term ``(-i)^|m+a| J_|m+a|(k r) e^{i m (phi - theta0)} e^{i a phi0}``."""
    if spec.m_max is not None and abs(m) > spec.m_max:
        raise TruncationInsufficient(f"|m|={abs(m)} exceeds m_max={spec.m_max}")
    order = mode_order(m, spec.alpha)
    radial = bessel_j(order, spec.k * np.asarray(r, dtype=float))
    value = (
        _phase_power(order)
        * radial
        * np.exp(1j * m * (np.asarray(phi, dtype=float) - spec.incidence_angle))
        * np.exp(1j * spec.alpha * spec.ideal_angle)
    )
    return complex(value) if np.ndim(value) == 0 else value


def truncation_order(k_r_max: float, tail_tol: float = TAIL_BOUND) -> int:
    """Smallest ``ceil(k_r_max) + c``, ``15 <= c <= 60``, with ``J_{m}(k_r_max) < tail_tol``."""
    if not k_r_max > 0.0:
        raise ValueError("k_r_max must be positive")
    base = int(math.ceil(k_r_max))
    for c in range(MIN_TRUNCATION_MARGIN, MAX_TRUNCATION_MARGIN + 1):
        m = base + c
        if abs(bessel.evaluate(float(m), [k_r_max])[0]) < tail_tol:
            return m
    return base + MAX_TRUNCATION_MARGIN


def default_m_max(alpha: float, k_r_max: float) -> int:
    # the +-m_max modes have orders m_max -+ alpha; the smaller one controls the tail
    tol = 0.1 * TAIL_BOUND
    m = truncation_order(k_r_max, tol)
    # for large k r the margin cap of truncation_order can be too tight
    while abs(bessel.evaluate(float(m), [k_r_max])[0]) >= tol:
        m += 1
    return m + int(math.ceil(abs(alpha)))


def _sum_modes(spec: PartialWaveSpec, r: np.ndarray, phi: np.ndarray, m_max: int) -> np.ndarray:
    kr = spec.k * r
    chi = phi - spec.incidence_angle
    total = np.zeros(r.shape, dtype=complex)
    tail = 0.0
    for m in range(-m_max, m_max + 1):
        order = mode_order(m, spec.alpha)
        radial = bessel.evaluate(order, kr)
        total += _phase_power(order) * radial * np.exp(1j * m * chi)
        if abs(m) == m_max:
            tail = max(tail, float(np.max(np.abs(radial))))
    if tail >= TAIL_BOUND:
        raise TruncationInsufficient(
            f"last included mode has modulus {tail:.3e} >= {TAIL_BOUND:.0e}; raise m_max"
        )
    return total * np.exp(1j * spec.alpha * spec.ideal_angle)


def ab_wavefunction(spec: PartialWaveSpec, grid: Grid) -> ComplexField:
    """Truncated partial-wave sum on every grid point.

    Raises
    ------
    TooCloseToFlux
        A grid point sits on the flux at the origin.
    TruncationInsufficient
        ``m_max < ceil(k r_max) + 15`` or the outermost mode exceeds 1e-12.
    """
    r, phi = grid.polar_coords()
    if np.any(r < EXCLUSION_RADIUS):
        raise TooCloseToFlux("grid point at the flux position")
    kr_max = spec.k * float(np.max(r))
    if kr_max > bessel.Z_MAX:
        raise ValueError(f"k r_max = {kr_max} exceeds {bessel.Z_MAX}")
    m_max = spec.m_max if spec.m_max is not None else default_m_max(spec.alpha, kr_max)
    if m_max < math.ceil(kr_max) + MIN_TRUNCATION_MARGIN:
        raise TruncationInsufficient(
            f"m_max={m_max} below ceil(k r_max)+{MIN_TRUNCATION_MARGIN}"
        )
    return ComplexField(grid, _sum_modes(spec, r, phi, m_max))


def forward_direction(spec: PartialWaveSpec) -> float:
    return wrap_angle(spec.incidence_angle + math.pi)


def incident_wave(spec: PartialWaveSpec, r, phi) -> np.ndarray:
    """Gauge-phased incident plane wave used to isolate the scattered part.

    The angle in the gauge factor is measured from the backward direction
    and wrapped to (-pi, pi], so its jump lies along the forward direction
    where the asymptotic split does not hold anyway. For
    ``theta0 == phi0`` this is ``exp(i k.r) exp(-i alpha (phi - phi0))``.
    """
    r = np.asarray(r, dtype=float)
    chi = np.vectorize(wrap_angle)(np.asarray(phi, dtype=float) - spec.incidence_angle)
    return np.exp(-1j * spec.k * r * np.cos(chi)) * np.exp(
        1j * spec.alpha * (spec.ideal_angle - chi)
    )


def scattering_amplitude(spec: PartialWaveSpec, r_extract: float, phi_samples: Sequence[float]) -> np.ndarray:
    """Far-field amplitude ``f(phi) = (psi - psi_inc) sqrt(r) exp(-i k r)``.

    Raises
    ------
    RadiusTooSmall
        ``k * r_extract < 50``.
    ForwardRegion
        A sample lies within 0.5 rad of the forward direction.
    """
    if spec.k * r_extract < MIN_EXTRACTION_KR:
        raise RadiusTooSmall(f"k r = {spec.k * r_extract} < {MIN_EXTRACTION_KR}")
    phi = np.atleast_1d(np.asarray(phi_samples, dtype=float))
    forward = forward_direction(spec)
    for p in phi:
        if abs(wrap_angle(p - forward)) < FORWARD_HALF_ANGLE:
            raise ForwardRegion(f"phi={p} within {FORWARD_HALF_ANGLE} rad of forward {forward}")
    field = ab_wavefunction(spec, Grid.from_polar(r_extract, phi))
    scattered = field.values - incident_wave(spec, r_extract, phi)
    return scattered * math.sqrt(r_extract) * np.exp(-1j * spec.k * r_extract)
