"""Geometric phase accumulated along polyline paths over a flux background.

Sign convention: the phase is ``-int eA . dl``. A counterclockwise loop
around a single flux of strength ``alpha`` therefore picks up
``-2 pi alpha``, matching the gauge factor ``exp(-i alpha (phi - phi0))``
of the plane-wave solution.

Two independent routes compute the same number:

* :func:`phase_analytic` sums exact per-segment angle increments about
  every flux (continuous angle unwrapping);
* :func:`phase_line_integral` integrates the vector potential numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidPath,
    PathNotClosed,
    PathThroughFlux,
    ToleranceNotReached,
    TooCloseToFlux,
)
from .flux_geometry import (
    EXCLUSION_RADIUS,
    TWO_PI,
    FluxConfig,
    potential_xy,
)
from .quadrature import adaptive_simpson

#: Paths may not pass closer than this to any flux.
PATH_CLEARANCE = 1e-6
MAX_SEGMENTS = 1 << 20
CUT_OFFSET = 1e-8


@dataclass(frozen=True, eq=False)
class PathPolyline:
    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
            raise InvalidPath("a path needs at least two 2-D points")
        if not np.all(np.isfinite(pts)):
            raise InvalidPath("path contains non-finite coordinates")
        step = np.diff(pts, axis=0)
        if np.any(np.einsum("ij,ij->i", step, step) == 0.0):
            raise InvalidPath("consecutive path points coincide")
        if self.closed and not np.array_equal(pts[0], pts[-1]):
            raise InvalidPath("closed path must end at its first point")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def segments(self) -> tuple[np.ndarray, np.ndarray]:
        return self.points[:-1], self.points[1:]

    @classmethod
    def from_dict(cls, data: dict) -> "PathPolyline":
        return cls(np.asarray(data["points"], dtype=float), bool(data.get("closed", False)))

    def to_dict(self) -> dict:
        return {"points": [[float(x), float(y)] for x, y in self.points], "closed": self.closed}

    def __add__(self, other: "PathPolyline") -> "PathPolyline":
        """Concatenate two paths sharing an endpoint."""
        if not np.array_equal(self.points[-1], other.points[0]):
            raise InvalidPath("paths do not join")
        pts = np.vstack([self.points, other.points[1:]])
        return PathPolyline(pts, closed=bool(np.array_equal(pts[0], pts[-1]) and len(pts) > 2))


def polygon_loop(center: Sequence[float], radius: float, n: int = 64, turns: int = 1, start: float = 0.0) -> PathPolyline:
    """Closed regular-polygon path winding ``turns`` times (negative = clockwise)."""
    if turns == 0:
        raise InvalidPath("use a non-zero number of turns")
    count = n * abs(turns)
    t = start + math.copysign(1.0, turns) * TWO_PI * np.arange(count) / n
    pts = np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)])
    return PathPolyline(np.vstack([pts, pts[:1]]), closed=True)


@dataclass(frozen=True)
class PhaseResult:
    phase: float
    per_flux_angle_change: tuple[float, ...]
    windings: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "phase": self.phase,
            "per_flux_angle_change": list(self.per_flux_angle_change),
            "windings": list(self.windings),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PhaseResult":
        return cls(
            float(data["phase"]),
            tuple(float(v) for v in data["per_flux_angle_change"]),
            tuple(int(v) for v in data.get("windings") or ()),
        )


def _segment_distance(a: np.ndarray, b: np.ndarray, c) -> np.ndarray:
    """Distance from point ``c`` to each segment ``a[i] -> b[i]``."""
    d = b - a
    t = np.clip(np.einsum("ij,ij->i", np.asarray(c) - a, d) / np.einsum("ij,ij->i", d, d), 0.0, 1.0)
    foot = a + t[:, None] * d
    return np.hypot(*(foot - np.asarray(c)).T)


def _check_clearance(path: PathPolyline, center, radius: float = PATH_CLEARANCE) -> None:
    a, b = path.segments
    if np.any(_segment_distance(a, b, center) < radius):
        raise PathThroughFlux(f"path passes within {radius} of ({center[0]}, {center[1]})")


def unwrap_angle(path: PathPolyline, center: Sequence[float]) -> np.ndarray:
    """Continuous polar angle of every path vertex about ``center``.

    A straight segment that avoids ``center`` subtends less than pi, so the
    signed increment ``atan2(cross, dot)`` between consecutive vertices is
    exact; the first angle is on the principal branch.
    """
    _check_clearance(path, center)
    rel = path.points - np.asarray(center, dtype=float)
    u, v = rel[:-1], rel[1:]
    cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    dot = u[:, 0] * v[:, 0] + u[:, 1] * v[:, 1]
    theta0 = math.atan2(rel[0, 1], rel[0, 0])
    return theta0 + np.concatenate([[0.0], np.cumsum(np.arctan2(cross, dot))])


def winding_number(path: PathPolyline, center: Sequence[float]) -> int:
    if not path.closed:
        raise PathNotClosed("winding number needs a closed path")
    theta = unwrap_angle(path, center)
    return int(round((theta[-1] - theta[0]) / TWO_PI))


def _result(path: PathPolyline, phase: float, changes: Sequence[float]) -> PhaseResult:
    windings: tuple[int, ...] = ()
    if path.closed:
        windings = tuple(int(round(c / TWO_PI)) for c in changes)
    return PhaseResult(float(phase), tuple(float(c) for c in changes), windings)


def phase_analytic(config: FluxConfig, path: PathPolyline) -> PhaseResult:
    """Phase ``-sum_i alpha_i * (continuous angle change about flux i)``."""
    changes = []
    for pos in config.positions:
        theta = unwrap_angle(path, pos)
        changes.append(theta[-1] - theta[0])
    phase = -math.fsum(a * c for a, c in zip(config.alphas, changes))
    return _result(path, phase, changes)


def _breakpoints(a: np.ndarray, b: np.ndarray, positions: np.ndarray) -> list[float]:
    """Segment parameters of the closest approach to each flux.

    Each flux term is monotone on either side of its foot point, which keeps
    the Simpson refinement from stepping over a narrow peak.
    """
    d = b - a
    dd = float(d @ d)
    ts = {0.0, 1.0}
    for pos in positions:
        t = float((pos - a) @ d) / dd
        if 0.0 < t < 1.0:
            ts.add(t)
    return sorted(ts)


def _integrate_path(path, integrand_for_segment, positions, tol, budget):
    a_all, b_all = path.segments
    pieces = []
    for a, b in zip(a_all, b_all):
        ts = _breakpoints(a, b, positions)
        pieces.extend((a, b, lo, hi) for lo, hi in zip(ts[:-1], ts[1:]))
    share = tol / len(pieces)
    total = 0.0
    used = 0
    for a, b, lo, hi in pieces:
        f = integrand_for_segment(a, b)
        try:
            value, n = adaptive_simpson(f, lo, hi, share, max_intervals=budget - used)
        except OverflowError:
            raise ToleranceNotReached(f"more than {budget} segments needed for tol={tol}") from None
        total += value
        used += n
    return total


def phase_line_integral(config: FluxConfig, path: PathPolyline, tol: float = 1e-8) -> PhaseResult:
    """Phase ``-int eA . dl`` by adaptive Simpson quadrature to absolute ``tol``.

    ``per_flux_angle_change`` is integrated the same way with unit strength.

    Raises
    ------
    PathThroughFlux
        The path passes within 1e-6 of a flux.
    ToleranceNotReached
        More than 2**20 subintervals would be required.
    """
    positions = config.positions
    for pos in positions:
        _check_clearance(path, pos)

    def potential_along(cfg):
        def for_segment(a, b):
            d = b - a

            def f(t):
                ax, ay = potential_xy(cfg, a[0] + t * d[0], a[1] + t * d[1])
                return float(ax * d[0] + ay * d[1])

            return f

        return for_segment

    if len(positions) == 0:
        return _result(path, 0.0, [])
    phase = -_integrate_path(path, potential_along(config), positions, tol, MAX_SEGMENTS)
    changes = []
    for flux in config.fluxes:
        unit = FluxConfig((type(flux)(flux.position, 1.0),), config.ideal_angle)
        changes.append(_integrate_path(path, potential_along(unit), positions, tol, MAX_SEGMENTS))
    return _result(path, phase, changes)


def _cut_angles(config: FluxConfig, x, y) -> list[np.ndarray]:
    out = []
    for px, py in config.positions:
        theta = np.arctan2(np.asarray(y) - py, np.asarray(x) - px) - config.ideal_angle
        out.append(np.mod(theta, TWO_PI))
    return out


def plane_wave_state(config: FluxConfig, k: float, incidence_angle: float, p):
    """Multi-flux plane-wave solution projected onto the plane.

    ``exp(i k.p) * prod_i exp(-i alpha_i theta_i(p))`` where ``theta_i`` in
    [0, 2pi) is measured counterclockwise from the ray leaving flux ``i``
    toward the ideal point. Each flux thus contributes a cut along its
    ideal ray. ``p`` may be a single point or an ``(N, 2)`` array.
    """
    pts = np.asarray(p, dtype=float)
    x, y = pts[..., 0], pts[..., 1]
    for i, (px, py) in enumerate(config.positions):
        if np.any(np.hypot(x - px, y - py) < EXCLUSION_RADIUS):
            raise TooCloseToFlux(f"point within {EXCLUSION_RADIUS} of flux {i}")
    phase = k * (math.cos(incidence_angle) * x + math.sin(incidence_angle) * y)
    for alpha, theta in zip(config.alphas, _cut_angles(config, x, y)):
        phase = phase - alpha * theta
    value = np.exp(1j * phase)
    return complex(value) if np.ndim(value) == 0 else value


def cut_discontinuity(
    config: FluxConfig,
    flux_index: int,
    radius: float,
    k: float = 1.0,
    incidence_angle: float = 0.0,
) -> complex:
    """Ratio of the plane-wave state just clockwise vs just counterclockwise of a cut.

    For flux ``i`` this is ``exp(-2 pi i alpha_i)`` up to the O(k r 1e-8)
    change of the plane-wave factor between the two probe points.
    """
    if not 0 <= flux_index < len(config.fluxes):
        raise IndexOutOfRange(f"flux index {flux_index} out of range")
    if not radius > 0.0:
        raise ValueError("radius must be positive")
    ax, ay = config.fluxes[flux_index].position
    below_angle = config.ideal_angle - CUT_OFFSET
    above_angle = config.ideal_angle + CUT_OFFSET
    below = (ax + radius * math.cos(below_angle), ay + radius * math.sin(below_angle))
    above = (ax + radius * math.cos(above_angle), ay + radius * math.sin(above_angle))
    return plane_wave_state(config, k, incidence_angle, below) / plane_wave_state(
        config, k, incidence_angle, above
    )
