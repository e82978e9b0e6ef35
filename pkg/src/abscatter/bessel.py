"""Bessel functions of the first kind for real order nu >= 0 and real z >= 0.

Two evaluation paths:

* power series ``sum_k (-1)^k (z/2)^(2k+nu) / (k! Gamma(k+nu+1))`` for
  ``z <= max(12, 2 nu)``. The sum of absolute terms is tracked; when it
  shows that double precision would lose too many digits to cancellation
  the same series is re-summed in extended precision (mpmath floats).
* Schlaefli's integral
  ``(1/pi) int_0^pi cos(nu t - z sin t) dt - sin(nu pi)/pi int_0^inf exp(-z sinh t - nu t) dt``
  above that, on a composite Gauss-Legendre rule whose panel count scales
  with the oscillation frequency.
"""
from __future__ import annotations

import math

import mpmath
import numpy as np

from .errors import OutOfSupportedRange
from .quadrature import gauss_kronrod, gauss_legendre_panels

NU_MAX = 200.0
Z_MAX = 1e4

# Above this sum of |terms| the double-precision series is not trusted.
_CANCELLATION_LIMIT = 1e3


def sinpi(x: float) -> float:
    """``sin(pi x)``, exactly zero at integers and exactly +-1 at half-integers."""
    r = math.fmod(x, 2.0)
    if r < 0.0:
        r += 2.0
    if r == 0.0 or r == 1.0:
        return 0.0
    if r == 0.5:
        return 1.0
    if r == 1.5:
        return -1.0
    if r > 1.0:
        return -math.sin(math.pi * (r - 1.0))
    return math.sin(math.pi * r)


def is_integer(x: float) -> bool:
    return float(x).is_integer()


def series_regime(nu: float, z) -> np.ndarray:
    """Mask of arguments handled by the power series."""
    return np.asarray(z) <= max(12.0, 2.0 * nu)


def _series_double(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    half = 0.5 * z
    with np.errstate(divide="ignore", under="ignore"):
        lead = np.where(
            z > 0.0,
            np.exp(nu * np.log(np.where(z > 0.0, half, 1.0)) - math.lgamma(nu + 1.0)),
            1.0 if nu == 0.0 else 0.0,
        )
    q = half * half
    term = lead.copy()
    total = lead.copy()
    abs_total = np.abs(lead)
    k = 0
    while True:
        term = -term * q / ((k + 1.0) * (k + nu + 1.0))
        total += term
        abs_total += np.abs(term)
        k += 1
        decreasing = (k + 1.0) * (k + nu + 1.0) > q
        if np.all(decreasing & (np.abs(term) <= 1e-17 * abs_total)):
            break
        if k > 5000:  # pragma: no cover - unreachable inside the supported range
            break
    return total, abs_total


def _series_mp(nu: float, z: float, dps: int) -> float:
    with mpmath.workdps(dps):
        half = mpmath.mpf(z) / 2
        nu_mp = mpmath.mpf(nu)
        if z == 0.0:
            return 1.0 if nu == 0.0 else 0.0
        term = half**nu_mp / mpmath.gamma(nu_mp + 1)
        total = term
        q = half * half
        eps = mpmath.mpf(10) ** (-dps)
        k = 0
        while True:
            term = -term * q / ((k + 1) * (k + nu_mp + 1))
            total += term
            k += 1
            if (k + 1) * (k + nu + 1) > float(q) and abs(term) <= eps * abs(total):
                break
        return float(total)


def series(nu: float, z) -> np.ndarray:
    """Power-series evaluation (any z, extended precision where needed)."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    total, abs_total = _series_double(nu, z)
    for i in np.flatnonzero(abs_total > _CANCELLATION_LIMIT):
        dps = 20 + int(math.ceil(math.log10(abs_total[i])))
        total[i] = _series_mp(nu, float(z[i]), dps)
    return total


def _decay_leg(nu: float, z: float) -> float:
    """``int_0^inf exp(-z sinh t - nu t) dt`` for z > 0."""
    t_max = math.asinh(max(1.0, math.log(1e14) / z)) + 5.0
    value, _ = gauss_kronrod(
        lambda t: np.exp(-z * np.sinh(t) - nu * t), 0.0, t_max, tol=1e-16, rtol=1e-15, panels=8
    )
    return float(value)


def integral(nu: float, z) -> np.ndarray:
    """Schlaefli-integral evaluation, valid for z > 0."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    out = np.empty_like(z)
    s = sinpi(nu)
    for i, zi in enumerate(z):
        panels = int(math.ceil(nu + zi)) + 2
        theta, w = gauss_legendre_panels(0.0, math.pi, panels, order=20)
        real_part = float(np.dot(w, np.cos(nu * theta - zi * np.sin(theta)))) / math.pi
        tail = 0.0 if s == 0.0 else -s / math.pi * _decay_leg(nu, float(zi))
        out[i] = real_part + tail
    return out


def evaluate(nu: float, z, method: str = "auto") -> np.ndarray:
    """Unchecked evaluator used internally (no range limits on ``nu``)."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if method == "series":
        return series(nu, z)
    if method == "integral":
        return integral(nu, z)
    mask = series_regime(nu, z)
    out = np.empty_like(z)
    if np.any(mask):
        out[mask] = series(nu, z[mask])
    if np.any(~mask):
        out[~mask] = integral(nu, z[~mask])
    return out


def bessel_j(nu: float, z, method: str = "auto"):
    """Bessel function ``J_nu(z)`` for 0 <= nu <= 200 and 0 <= z <= 1e4.

    Parameters
    ----------
    nu : float
        Non-negative real order.
    z : float or array_like
        Non-negative argument(s).
    method : {"auto", "series", "integral"}
        Force one evaluation path; ``"auto"`` switches at ``max(12, 2 nu)``.

    Returns
    -------
    float or ndarray
        Same shape as ``z``. Absolute error is below 1e-10.
    """
    nu = float(nu)
    scalar = np.ndim(z) == 0
    z_arr = np.asarray(z, dtype=float)
    if not math.isfinite(nu) or nu < 0.0 or nu > NU_MAX:
        raise OutOfSupportedRange(f"order {nu} outside [0, {NU_MAX}]")
    if not np.all(np.isfinite(z_arr)) or np.any(z_arr < 0.0) or np.any(z_arr > Z_MAX):
        raise OutOfSupportedRange(f"argument outside [0, {Z_MAX}]")
    if method not in ("auto", "series", "integral"):
        raise ValueError(f"unknown method {method!r}")
    if method == "integral" and np.any(z_arr == 0.0):
        raise OutOfSupportedRange("integral path needs z > 0")
    out = evaluate(nu, z_arr.ravel(), method).reshape(z_arr.shape)
    return float(out) if scalar else out
