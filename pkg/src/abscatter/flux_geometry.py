"""Point-flux background: flux positions, strengths and the ideal point.

Units: hbar = 1 and the charge is absorbed into the flux strength, so the
vector potential returned here is ``eA`` and ``alpha`` is dimensionless
(flux in units of the flux quantum).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateFlux, IndexOutOfRange, NonFinite, TooCloseToFlux

TWO_PI = 2.0 * math.pi

#: Minimum allowed distance between two fluxes.
MIN_SEPARATION = 1e-12
#: Exclusion radius around each flux for field and angle evaluation.
EXCLUSION_RADIUS = 1e-9


def wrap_angle(theta: float) -> float:
    """Map an angle onto the principal branch (-pi, pi]."""
    wrapped = math.remainder(theta, TWO_PI)
    if wrapped == -math.pi:
        return math.pi
    return wrapped


@dataclass(frozen=True)
class Flux:
    position: tuple[float, float]
    alpha: float


@dataclass(frozen=True)
class FluxConfig:
    """Background of point fluxes plus the direction of the ideal point.

    Construct through :func:`validate_config` (or :meth:`from_dict`) to get
    the normalization and invariant checks.
    """

    fluxes: tuple[Flux, ...] = ()
    ideal_angle: float = 0.0

    @property
    def positions(self) -> np.ndarray:
        if not self.fluxes:
            return np.zeros((0, 2))
        return np.array([f.position for f in self.fluxes], dtype=float)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([f.alpha for f in self.fluxes], dtype=float)

    @classmethod
    def from_dict(cls, data: dict) -> "FluxConfig":
        fluxes = tuple(
            Flux((float(f["x"]), float(f["y"])), float(f["alpha"]))
            for f in data.get("fluxes", [])
        )
        return validate_config(cls(fluxes, float(data.get("ideal_angle", 0.0))))

    def to_dict(self) -> dict:
        return {
            "fluxes": [
                {"x": f.position[0], "y": f.position[1], "alpha": f.alpha}
                for f in self.fluxes
            ],
            "ideal_angle": self.ideal_angle,
        }


def make_config(
    fluxes: Iterable[tuple[Sequence[float], float]] = (), ideal_angle: float = 0.0
) -> FluxConfig:
    """Convenience constructor from ``[((x, y), alpha), ...]``."""
    raw = FluxConfig(
        tuple(Flux((float(p[0]), float(p[1])), float(a)) for p, a in fluxes),
        float(ideal_angle),
    )
    return validate_config(raw)


def validate_config(raw: FluxConfig) -> FluxConfig:
    """Check invariants and wrap the ideal angle onto (-pi, pi].

    Raises
    ------
    NonFinite
        Any coordinate, strength or the ideal angle is NaN or infinite.
    DuplicateFlux
        Two fluxes are closer than ``MIN_SEPARATION``.
    """
    if not math.isfinite(raw.ideal_angle):
        raise NonFinite("ideal_angle is not finite")
    for i, f in enumerate(raw.fluxes):
        if not all(math.isfinite(v) for v in (*f.position, f.alpha)):
            raise NonFinite(f"flux {i} has a non-finite field")
    pos = raw.positions
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if math.dist(pos[i], pos[j]) <= MIN_SEPARATION:
                raise DuplicateFlux(f"fluxes {i} and {j} coincide")
    return FluxConfig(tuple(raw.fluxes), wrap_angle(raw.ideal_angle))


def _check_clearance(config: FluxConfig, x: np.ndarray, y: np.ndarray) -> None:
    for i, (ax, ay) in enumerate(config.positions):
        if np.any(np.hypot(x - ax, y - ay) < EXCLUSION_RADIUS):
            raise TooCloseToFlux(f"evaluation point within {EXCLUSION_RADIUS} of flux {i}")


def potential_xy(config: FluxConfig, x, y) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``eA`` at arrays of coordinates, without clearance checks."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax_tot = np.zeros(np.broadcast(x, y).shape)
    ay_tot = np.zeros_like(ax_tot)
    for (px, py), alpha in zip(config.positions, config.alphas):
        dx = x - px
        dy = y - py
        r2 = dx * dx + dy * dy
        ax_tot += -alpha * dy / r2
        ay_tot += alpha * dx / r2
    return ax_tot, ay_tot


def vector_potential(config: FluxConfig, p: Sequence[float]) -> np.ndarray:
    """Field-free vector potential ``sum_i alpha_i z x (p - a_i) / |p - a_i|^2``."""
    x, y = float(p[0]), float(p[1])
    _check_clearance(config, np.array(x), np.array(y))
    ax, ay = potential_xy(config, x, y)
    return np.array([float(ax), float(ay)])


def _flux_offset(config: FluxConfig, flux_index: int, p: Sequence[float]) -> tuple[float, float]:
    if not 0 <= flux_index < len(config.fluxes):
        raise IndexOutOfRange(f"flux index {flux_index} out of range")
    ax, ay = config.fluxes[flux_index].position
    dx, dy = float(p[0]) - ax, float(p[1]) - ay
    if math.hypot(dx, dy) < EXCLUSION_RADIUS:
        raise TooCloseToFlux(f"point within {EXCLUSION_RADIUS} of flux {flux_index}")
    return dx, dy


def relative_angle(config: FluxConfig, flux_index: int, p: Sequence[float]) -> float:
    """Angle of ``p`` seen from flux ``flux_index``, measured from the ideal ray.

    Principal branch (-pi, pi], counterclockwise positive.
    """
    dx, dy = _flux_offset(config, flux_index, p)
    return wrap_angle(math.atan2(dy, dx) - config.ideal_angle)


def cut_angle(config: FluxConfig, flux_index: int, p: Sequence[float]) -> float:
    """Like :func:`relative_angle` but on the branch [0, 2pi).

    The discontinuity sits on the ideal ray itself, which is where the
    single-sheet projection of the wavefunction puts its cut.
    """
    theta = relative_angle(config, flux_index, p)
    return theta + TWO_PI if theta < 0.0 else theta
