"""Integral representations of Bessel functions behind the momentum picture.

Integer order uses the real-angle integral over one period,

    J_n(z) = (1/2pi) int_{-pi}^{pi} exp(-i z sin t + i n t) dt.

For non-integer order the angle contour is pushed up the two vertical
lines Re t = -pi, +pi into the upper half plane. The vertical legs
combine into one decaying integral carrying ``sin(nu pi)``:

    J_nu(z) = real_leg + imag_leg
    real_leg = (1/2pi) int_{-pi}^{pi} exp(i (nu t - z sin t)) dt
    imag_leg = -(sin(nu pi)/pi) int_0^inf exp(-z sinh t - nu t) dt

The ``imag_leg`` vanishes identically for integer order, which is the
split into an incident part and a part proportional to ``sin(alpha pi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bessel
from .bessel import is_integer, sinpi
from .errors import OutOfSupportedRange, QuadratureFailure, TailNotConverged
from .io import csv_text
from .quadrature import gauss_kronrod, oscillation_panels

QUAD_TOL = 1e-13
TAIL_EPS = 1e-14
TAIL_BOUND = 1e-12


@dataclass(frozen=True)
class ContourSplit:
    real_leg: float
    imag_leg: float
    total: float


@dataclass(frozen=True)
class MomentumSolution:
    """Sharp-momentum state: radius ``k``, direction ``theta0``, gauge phase data.

    The delta functions in the momentum-space solution are carried as
    these parameters only; everything numerical goes through the
    mode-by-mode integrals below.
    """

    k: float
    theta0: float = 0.0
    alpha: float = 0.0
    ideal_angle: float = 0.0

    def __post_init__(self):
        if not self.k > 0.0:
            raise ValueError("k must be positive")


def _real_angle_integral(order: float, z: float) -> complex:
    """``(1/2pi) int_{-pi}^{pi} exp(i(order t - z sin t)) dt`` (complex)."""
    panels = oscillation_panels(abs(z) + abs(order), 2.0 * math.pi) + 2

    def f(t):
        return np.exp(1j * (order * t - z * np.sin(t)))

    value, _ = gauss_kronrod(f, -math.pi, math.pi, tol=QUAD_TOL, panels=panels)
    return complex(value) / (2.0 * math.pi)


def bessel_integer_integral(n: int, z: float) -> float:
    """``J_n(z)`` for integer ``n >= 0`` from the one-period integral."""
    if int(n) != n or n < 0:
        raise OutOfSupportedRange(f"order {n} is not a non-negative integer")
    if not math.isfinite(z) or abs(z) > 1e3:
        raise OutOfSupportedRange(f"|z| = {abs(z)} > 1e3")
    value = _real_angle_integral(float(n), float(z))
    if abs(value.imag) > 1e-10:
        raise QuadratureFailure(f"imaginary residue {value.imag:.3e}")
    return value.real


def tail_cutoff(z: float) -> float:
    """Truncation point of the semi-infinite leg."""
    return math.asinh(max(1.0, math.log(1.0 / TAIL_EPS) / z)) + 5.0


def tail_remainder_bound(z: float, cutoff: float) -> float:
    """Upper bound on ``int_T^inf exp(-z sinh t - nu t) dt`` for nu >= 0."""
    return math.exp(-z * math.sinh(cutoff)) / (z * math.cosh(cutoff))


def decay_integral(nu: float, z: float) -> float:
    """Positive integral ``int_0^inf exp(-z sinh t - nu t) dt`` (z > 0)."""
    cutoff = tail_cutoff(z)
    if tail_remainder_bound(z, cutoff) >= TAIL_BOUND:
        raise TailNotConverged(f"tail beyond t={cutoff} not below {TAIL_BOUND}")
    value, _ = gauss_kronrod(
        lambda t: np.exp(-z * np.sinh(t) - nu * t), 0.0, cutoff, tol=1e-15, rtol=1e-14, panels=16
    )
    return float(value)


def _check_split_range(nu: float, z: float) -> None:
    if not (math.isfinite(nu) and 0.0 <= nu <= 50.0):
        raise OutOfSupportedRange(f"order {nu} outside [0, 50]")
    if not (math.isfinite(z) and 0.0 < z <= 100.0):
        raise OutOfSupportedRange(f"argument {z} outside (0, 100]")


def bessel_contour_split(nu: float, z: float) -> ContourSplit:
    """Real-angle and imaginary-angle contributions to ``J_nu(z)``."""
    nu, z = float(nu), float(z)
    _check_split_range(nu, z)
    real = _real_angle_integral(nu, z)
    if abs(real.imag) > 1e-10:
        raise QuadratureFailure(f"real leg has imaginary residue {real.imag:.3e}")
    if is_integer(nu):
        imag_leg = 0.0
    else:
        imag_leg = -sinpi(nu) / math.pi * decay_integral(nu, z)
    return ContourSplit(real.real, imag_leg, real.real + imag_leg)


def scattered_scaling(alphas: Sequence[float], z: float) -> list[float]:
    """``imag_leg(alpha, z) / sin(alpha pi)`` with the sine divided out exactly.

    Equals ``-(1/pi) int_0^inf exp(-z sinh t - alpha t) dt``: finite,
    negative and smooth in ``alpha``.
    """
    out = []
    for alpha in alphas:
        alpha = float(alpha)
        _check_split_range(alpha, float(z))
        if is_integer(alpha):
            raise OutOfSupportedRange(f"alpha={alpha} is an integer; no scattered leg")
        out.append(-decay_integral(alpha, float(z)) / math.pi)
    return out


def fourier_reconstruct_mode(m: int, alpha: float, k: float, r: float) -> complex:
    """Angular Fourier integral of one mode of the momentum solution.

    For integer ``alpha`` this is the one-period integral with order
    ``n = m + alpha`` (negative orders give ``(-1)^n J_|n|``). For
    non-integer ``alpha`` the extended contour is used at order
    ``|m + alpha|``, and a negative order carries the same bookkeeping
    factor ``exp(i pi (m + alpha))``, so the modulus is always
    ``J_|m+alpha|(k r)``.
    """
    order = m + float(alpha)
    z = float(k) * float(r)
    if not (math.isfinite(z) and 0.0 <= z <= 100.0):
        raise OutOfSupportedRange(f"k r = {z} outside [0, 100]")
    if is_integer(order):
        return _real_angle_integral(order, z)
    if z == 0.0:
        return 0.0j
    value = bessel_contour_split(abs(order), z).total
    if order < 0.0:
        return complex(np.exp(1j * math.pi * order) * value)
    return complex(value)


def reconstruct_wavefunction(alpha: float, k: float, r: float, phi: float, m_max: int, ideal_angle: float = 0.0) -> complex:
    """Stitch the Fourier modes back into a coordinate-space value.

    ``exp(i alpha phi0) sum_m (-i)^alpha exp(-i m (pi/2 - phi)) F_m`` with
    ``F_m`` from :func:`fourier_reconstruct_mode` and incidence angle zero.
    """
    total = 0.0j
    for m in range(-m_max, m_max + 1):
        mode = fourier_reconstruct_mode(m, alpha, k, r)
        total += np.exp(-0.5j * math.pi * alpha) * np.exp(-1j * m * (0.5 * math.pi - phi)) * mode
    return complex(total * np.exp(1j * alpha * ideal_angle))


def split_table(nus: Sequence[float], zs: Sequence[float]) -> str:
    """CSV table ``nu,z,real_leg,imag_leg,total,series_ref``."""
    rows = []
    for nu in nus:
        for z in zs:
            s = bessel_contour_split(nu, z)
            ref = float(bessel.series(float(nu), [float(z)])[0])
            rows.append((float(nu), float(z), s.real_leg, s.imag_leg, s.total, ref))
    return csv_text(("nu", "z", "real_leg", "imag_leg", "total", "series_ref"), rows)
